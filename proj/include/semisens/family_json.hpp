#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semisens/generator_family.hpp"

namespace semisens {

namespace detail {

template <ScalarField S>
S scalar_from_json(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return ScalarTraits<S>::from_long(j.get<long>());
    if (j.is_number()) return ScalarTraits<S>::from_double(j.get<double>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            if constexpr (ScalarTraits<S>::is_exact) {
                return S::from_string(s);
            } else {
                auto slash = s.find('/');
                if (slash == std::string::npos) return std::stod(s);
                return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(where + ": cannot parse scalar '" + s + "'");
        }
    }
    throw ConfigError(where + ": expected a number or a \"num/den\" string");
}

}  // namespace detail

/// Builds a family from a JSON description: an array of term objects
///   {"order": i, "p_coeffs": [...], "q0": ..., "dq0": ...}
/// (or an object carrying that array under "terms"). Scalars are numbers or
/// exact "num/den" strings. Degree violations are rejected with a diagnostic
/// naming the offending term.
template <ScalarField S>
GeneratorFamily<S> family_from_json(const nlohmann::json& doc) {
    const nlohmann::json* arr = &doc;
    if (doc.is_object()) {
        if (!doc.contains("terms"))
            throw ConfigError("family_from_json: object form requires a \"terms\" array");
        arr = &doc.at("terms");
    }
    if (!arr->is_array() || arr->empty())
        throw ConfigError("family_from_json: expected a nonempty array of terms");

    std::vector<GeneratorTerm<S>> terms;
    terms.reserve(arr->size());
    for (size_t k = 0; k < arr->size(); ++k) {
        const std::string where = "family_from_json: term #" + std::to_string(k);
        const nlohmann::json& t = (*arr)[k];
        if (!t.is_object()) throw ConfigError(where + ": expected an object");
        for (const char* key : {"order", "p_coeffs", "q0", "dq0"})
            if (!t.contains(key))
                throw ConfigError(where + ": missing field \"" + key + "\"");
        if (!t.at("order").is_number_integer())
            throw ConfigError(where + ": \"order\" must be an integer");
        const int order = t.at("order").get<int>();
        if (!t.at("p_coeffs").is_array() || t.at("p_coeffs").empty())
            throw ConfigError(where + ": \"p_coeffs\" must be a nonempty array");
        std::vector<S> coeffs;
        coeffs.reserve(t.at("p_coeffs").size());
        for (const auto& c : t.at("p_coeffs"))
            coeffs.push_back(detail::scalar_from_json<S>(c, where + ", p_coeffs"));
        Polynomial<S> p(std::move(coeffs));
        if (p.degree() > order)
            throw ConfigError(where + ": degree(p) = " + std::to_string(p.degree()) +
                              " exceeds order " + std::to_string(order) +
                              " (degree preservation violated)");
        terms.push_back({std::move(p), order,
                         detail::scalar_from_json<S>(t.at("q0"), where + ", q0"),
                         detail::scalar_from_json<S>(t.at("dq0"), where + ", dq0")});
    }
    return GeneratorFamily<S>(std::move(terms));
}

template <ScalarField S>
GeneratorFamily<S> load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_family: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError("load_family: invalid JSON in '" + path + "': " + e.what());
    }
    return family_from_json<S>(doc);
}

}  // namespace semisens
