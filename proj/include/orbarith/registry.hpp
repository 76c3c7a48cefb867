#pragma once

// Worked examples re-verified by ID. Each check compares an expected statement with what
// the library computes and records where the expectation comes from.

#include <functional>
#include <string>
#include <vector>

#include "orbarith/model_io.hpp"

namespace orbarith {

struct ExampleCheck {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
    std::string source;  // location of the claim, e.g. "introduction"
};

struct ExampleCase {
    std::string id;
    std::string title;
    ModelFile model;  // the main model of the example, as a CLI model file would give it
    std::function<std::vector<ExampleCheck>(int jobs)> run;
};

const std::vector<ExampleCase>& example_registry();
const ExampleCase& find_example(const std::string& id);  // throws ParseError

}  // namespace orbarith
