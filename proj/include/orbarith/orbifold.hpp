#pragma once

// Orbifold models over Z: a projective model cut out by content-1 integer forms together
// with weighted divisor components, and the classification of rational points by their
// intersection multiplicities with those components.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "orbarith/arith.hpp"
#include "orbarith/poly.hpp"

namespace orbarith {

/// Primitive integer coordinates whose first nonzero entry is positive.
struct ProjPointQ {
    std::vector<BigInt> coords;

    BigInt height() const;
    std::string to_string() const;
    friend bool operator==(const ProjPointQ&, const ProjPointQ&) = default;
};

ProjPointQ normalize_point(std::span<const BigInt> raw);
ProjPointQ normalize_point(std::initializer_list<long> raw);

class Weight {
public:
    static Weight finite(unsigned long m);  // m >= 1
    static Weight infinity() { return Weight(0, true); }

    bool is_infinite() const { return inf_; }
    unsigned long value() const;  // precondition: finite
    std::string to_string() const;
    friend bool operator==(const Weight&, const Weight&) = default;

private:
    Weight(unsigned long m, bool inf) : m_(m), inf_(inf) {}
    unsigned long m_ = 1;
    bool inf_ = false;
};

struct DivisorComponent {
    Poly f;
    Weight weight = Weight::finite(1);
};

struct OrbifoldModelZ {
    int ambient_dim = 1;
    std::vector<Poly> ambient_equations;
    std::vector<DivisorComponent> divisor;
    std::set<BigInt> excluded_places;
    std::vector<std::string> var_names;  // optional, for display and parsing

    int nvars() const { return ambient_dim + 1; }
    std::vector<std::string> names() const;

    /// Checks the content-1, homogeneity and non-proportionality invariants; throws InvalidModel.
    void validate() const;
    bool on_ambient(const ProjPointQ& P) const;
};

struct LocalClassification {
    std::vector<ExtNat> multiplicities;  // one per divisor component
    bool on_divisor_inf = false;
    bool strict = true;
    bool integral = false;
    bool darmon = false;
    bool campana = false;
    bool weak_campana = false;
};

/// v_p(f(P)) at primitive coordinates; infinity when f(P) = 0.
ExtNat intersection_multiplicity(const ProjPointQ& P, const Poly& f, const BigInt& p);

/// Flags from a vector of multiplicities (one per component of the model).
LocalClassification classify_multiplicities(const OrbifoldModelZ& M, std::vector<ExtNat> mult);

LocalClassification classify_local(const ProjPointQ& P, const OrbifoldModelZ& M, const BigInt& p);

struct GlobalClassification {
    std::vector<BigInt> relevant_primes;
    std::map<BigInt, LocalClassification> per_prime;
    LocalClassification generic;  // the classification at every prime outside relevant_primes
    bool on_divisor_inf = false;
    bool strict = true;
    bool integral = true;
    bool darmon = true;
    bool campana = true;
    bool weak_campana = true;
};

GlobalClassification classify_global(const ProjPointQ& P, const OrbifoldModelZ& M);

enum class PointFlag { Any, Integral, Darmon, Campana, WeakCampana };
const char* to_string(PointFlag f);
PointFlag parse_point_flag(const std::string& s);
bool flag_holds(const GlobalClassification& g, PointFlag f);

struct ResidueTarget {
    BigInt p;
    int k = 1;
    std::vector<BigInt> residue;  // compared projectively: some unit scalar matches
};

struct SearchOptions {
    std::uint64_t height = 10;
    PointFlag flag = PointFlag::Any;
    bool strict_only = false;  // drop points lying on any divisor component
    std::vector<ResidueTarget> targets;
    int jobs = 0;  // 0: OpenMP default
};

/// All points of height <= H on the model with the requested global flag, ordered by
/// (height, coordinates).
std::vector<ProjPointQ> search_points(const OrbifoldModelZ& M, const SearchOptions& opts);
/// Single-threaded reference with the same output.
std::vector<ProjPointQ> search_points_serial(const OrbifoldModelZ& M, const SearchOptions& opts);

}  // namespace orbarith
