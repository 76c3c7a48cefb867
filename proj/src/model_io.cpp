#include "orbarith/model_io.hpp"

#include <fstream>
#include <sstream>

#include "orbarith/errors.hpp"

namespace orbarith {

using nlohmann::json;

namespace {

BigInt coeff_from_json(const json& v) {
    if (v.is_number_integer()) return BigInt(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) return parse_bigint(v.get<std::string>());
    throw Error(ErrorKind::ParseError, "coefficient must be an integer or a decimal string");
}

json coeff_to_json(const BigInt& c) {
    if (fits_i64(c)) return to_i64(c);
    return c.get_str();
}

Exponents parse_exponents(const std::string& key, int nvars) {
    Exponents e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(part, &used);
            if (used != part.size() || v < 0) throw std::invalid_argument(part);
            e.push_back(v);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad exponent vector '" + key + "'");
        }
    }
    if (static_cast<int>(e.size()) != nvars)
        throw Error(ErrorKind::ParseError, "exponent vector '" + key + "' has the wrong length");
    return e;
}

Weight weight_from_json(const json& w) {
    if (w.is_string()) {
        auto s = w.get<std::string>();
        if (s == "inf" || s == "infinity") return Weight::infinity();
        throw Error(ErrorKind::ParseError, "weight must be a positive integer or \"inf\"");
    }
    if (!w.is_number_integer() || w.get<std::int64_t>() < 1)
        throw Error(ErrorKind::ParseError, "weight must be a positive integer or \"inf\"");
    return Weight::finite(w.get<unsigned long>());
}

}  // namespace

Poly poly_from_json(const json& j, const std::vector<std::string>& names) {
    const int nvars = static_cast<int>(names.size());
    if (j.is_string()) return Poly::parse(j.get<std::string>(), names);
    if (j.is_object()) {
        Poly f(nvars);
        for (const auto& [key, v] : j.items()) f += Poly::monomial(parse_exponents(key, nvars), coeff_from_json(v));
        return f;
    }
    throw Error(ErrorKind::ParseError, "a form must be an expression string or a coefficient map");
}

json poly_to_json(const Poly& f) {
    json out = json::object();
    for (const auto& [e, c] : f.terms()) {
        std::string key;
        for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
        out[key] = coeff_to_json(c);
    }
    return out;
}

ModelFile model_from_json(const json& j) {
    ModelFile mf;
    try {
        if (!j.is_object()) throw Error(ErrorKind::ParseError, "model must be a JSON object");
        if (j.contains("schema") && j.at("schema").get<int>() != 1)
            throw Error(ErrorKind::ParseError, "unsupported schema version");
        auto& M = mf.model;
        M.ambient_dim = j.at("ambient_dim").get<int>();
        if (M.ambient_dim < 1) throw Error(ErrorKind::ParseError, "ambient_dim must be positive");
        if (j.contains("variables")) {
            M.var_names = j.at("variables").get<std::vector<std::string>>();
            if (static_cast<int>(M.var_names.size()) != M.nvars())
                throw Error(ErrorKind::ParseError, "variables must list ambient_dim + 1 names");
        }
        const auto names = M.names();
        for (const auto& e : j.value("equations", json::array())) M.ambient_equations.push_back(poly_from_json(e, names));
        for (const auto& c : j.value("divisor", json::array())) {
            if (!c.is_object() || !c.contains("form"))
                throw Error(ErrorKind::ParseError, "divisor components need a \"form\"");
            M.divisor.push_back({poly_from_json(c.at("form"), names), weight_from_json(c.value("weight", json(1)))});
        }
        for (const auto& p : j.value("excluded_places", json::array())) M.excluded_places.insert(coeff_from_json(p));
        M.validate();

        if (j.contains("brauer")) {
            const auto& b = j.at("brauer");
            QuaternionClass A;
            A.d = coeff_from_json(b.at("d"));
            for (const auto& r : b.at("representatives")) {
                QuaternionRep rep{poly_from_json(r.at("num"), names), poly_from_json(r.at("den"), names), std::nullopt,
                                  std::nullopt};
                if (r.contains("second_num")) {
                    rep.second_num = poly_from_json(r.at("second_num"), names);
                    rep.second_den = poly_from_json(r.at("second_den"), names);
                }
                A.reps.push_back(std::move(rep));
            }
            A.validate(M.nvars());
            mf.cls = std::move(A);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("model JSON: ") + e.what());
    }
    return mf;
}

json model_to_json(const ModelFile& mf) {
    const auto& M = mf.model;
    json j{{"schema", 1}, {"ambient_dim", M.ambient_dim}, {"variables", M.names()}};
    j["equations"] = json::array();
    for (const auto& e : M.ambient_equations) j["equations"].push_back(e.to_string(M.names()));
    j["divisor"] = json::array();
    for (const auto& c : M.divisor) {
        json w = c.weight.is_infinite() ? json("inf") : json(c.weight.value());
        j["divisor"].push_back({{"form", c.f.to_string(M.names())}, {"weight", w}});
    }
    j["excluded_places"] = json::array();
    for (const auto& p : M.excluded_places) j["excluded_places"].push_back(coeff_to_json(p));
    if (mf.cls) {
        json reps = json::array();
        for (const auto& r : mf.cls->reps) {
            json o{{"num", r.num.to_string(M.names())}, {"den", r.den.to_string(M.names())}};
            if (r.second_num) {
                o["second_num"] = r.second_num->to_string(M.names());
                o["second_den"] = r.second_den->to_string(M.names());
            }
            reps.push_back(o);
        }
        j["brauer"] = {{"d", coeff_to_json(mf.cls->d)}, {"representatives", reps}};
    }
    return j;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open model file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    return model_from_json(j);
}

}  // namespace orbarith
