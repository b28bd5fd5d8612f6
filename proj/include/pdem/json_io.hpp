#pragma once

// JSON fragments for profiles, orderings, reference potentials and transform
// specs; JSON and CSV serialization of solver results.
//
//   mass:      {"kind": "constant"} | {"kind": "sech2", "q": 1}
//              | {"kind": "rational", "q": 0.5} | {"kind": "power", "xi": -1.333}
//              | {"kind": "exponential", "k": 1, "sign": 1}
//   ordering:  {"preset": "ZK"} | {"alpha": -0.25, "beta": -0.5}
//   potential: {"kind": "free", "V0": 0} | {"kind": "scarf1", "A": 3, "B": 1}
//              | {"kind": "kratzer", "gamma": 1} | {"kind": "qes", "A": 2}
//   transform: {"model": {...}, "mass": {...}, "lambda": 1.0, "nu": 0.0}

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pdem/error.hpp"
#include "pdem/mass.hpp"
#include "pdem/ordering.hpp"
#include "pdem/potentials.hpp"
#include "pdem/sl_solver.hpp"
#include "pdem/xform.hpp"

namespace pdem::io {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParameterError(std::string(what) + ": missing key \"" + key + "\"");
    }
    return j.at(key);
}

inline double number(const json& j, const char* key, const char* what) {
    const json& v = require(j, key, what);
    if (!v.is_number()) throw ParameterError(std::string(what) + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

inline double number_or(const json& j, const char* key, double fallback, const char* what) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number(j, key, what);
}

inline std::string kind_of(const json& j, const char* what) {
    const json& v = require(j, "kind", what);
    if (!v.is_string()) throw ParameterError(std::string(what) + ": \"kind\" must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline MassProfile parse_mass(const json& j) {
    const std::string kind = detail::kind_of(j, "mass");
    if (kind == "constant") return MassProfile::constant();
    if (kind == "sech2") return MassProfile::sech_squared(detail::number(j, "q", "mass"));
    if (kind == "rational") return MassProfile::rational_su11(detail::number(j, "q", "mass"));
    if (kind == "power") return MassProfile::power_law(detail::number(j, "xi", "mass"));
    if (kind == "exponential") {
        const double sign = detail::number_or(j, "sign", 1.0, "mass");
        return MassProfile::exponential(detail::number(j, "k", "mass"), sign < 0.0 ? -1 : 1);
    }
    throw ParameterError("mass: unknown kind \"" + kind + "\"");
}

inline OrderingParams parse_ordering(const json& j) {
    if (j.is_object() && j.contains("preset")) {
        const json& p = j.at("preset");
        if (!p.is_string()) throw ParameterError("ordering: \"preset\" must be a string");
        static const std::map<std::string, OrderingPreset> presets{
            {"BDD", OrderingPreset::BDD},
            {"Bastard", OrderingPreset::Bastard},
            {"ZK", OrderingPreset::ZK},
            {"Redistributed", OrderingPreset::Redistributed},
            {"LiKuhnDual", OrderingPreset::LiKuhnDual},
        };
        const auto it = presets.find(p.get<std::string>());
        if (it == presets.end()) throw ParameterError("ordering: unknown preset \"" + p.get<std::string>() + "\"");
        return OrderingParams::preset(it->second);
    }
    return {detail::number(j, "alpha", "ordering"), detail::number(j, "beta", "ordering")};
}

using PotentialParser = std::function<PotentialModel(const json&)>;

/// One entry per reference potential.
inline const std::map<std::string, PotentialParser>& potential_parsers() {
    static const std::map<std::string, PotentialParser> parsers{
        {"free",
         [](const json& j) { return PotentialModel::make<FreeConstant>(detail::number_or(j, "V0", 0.0, "free")); }},
        {"scarf1",
         [](const json& j) {
             return PotentialModel::make<ScarfI>(detail::number(j, "A", "scarf1"), detail::number(j, "B", "scarf1"));
         }},
        {"kratzer",
         [](const json& j) { return PotentialModel::make<Kratzer>(detail::number(j, "gamma", "kratzer")); }},
        {"qes", [](const json& j) { return PotentialModel::make<SymmetricQES>(detail::number(j, "A", "qes")); }},
    };
    return parsers;
}

inline PotentialModel parse_potential(const json& j) {
    const std::string kind = detail::kind_of(j, "potential");
    const auto& parsers = potential_parsers();
    const auto it = parsers.find(kind);
    if (it == parsers.end()) throw ParameterError("potential: unknown kind \"" + kind + "\"");
    return it->second(j);
}

inline TransformSpec parse_transform(const json& j) {
    return TransformSpec(parse_potential(detail::require(j, "model", "transform")),
                         parse_mass(detail::require(j, "mass", "transform")),
                         detail::number_or(j, "lambda", 1.0, "transform"), detail::number_or(j, "nu", 0.0, "transform"));
}

inline json to_json(const SpectrumResult& r) {
    auto nan_to_null = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
        return a;
    };
    json out;
    out["eigenvalues"] = r.eigenvalues;
    out["residuals"] = r.residuals;
    out["order"] = nan_to_null(r.order);
    out["error_estimate"] = nan_to_null(r.error_estimate);
    out["resolved"] = r.resolved;
    out["level_eigenvalues"] = r.level_eigenvalues;
    out["iterations"] = r.iterations;
    out["grid"] = {{"xmin", r.grid.xmin()}, {"xmax", r.grid.xmax()}, {"n", r.grid.n()}, {"h", r.grid.h()}};
    return out;
}

/// x, psi0, psi1, ... on the interior nodes.
inline std::string eigenvectors_csv(const SpectrumResult& r) {
    std::ostringstream os;
    os << 'x';
    for (std::size_t j = 0; j < r.eigenvectors.size(); ++j) os << ",psi" << j;
    os << '\n';
    char buf[40];
    for (int i = 1; i <= r.grid.n(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", r.grid.node(i));
        os << buf;
        for (const auto& v : r.eigenvectors) {
            std::snprintf(buf, sizeof buf, ",%.17g", v[i - 1]);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace pdem::io
