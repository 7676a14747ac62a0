#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semisens/fd_oracle.hpp"
#include "semisens/sensitivity.hpp"

namespace semisens {

/// Computes the sensitivity grid over (test function, time), optionally
/// alongside the finite-difference oracle. Evaluation order is fixed, so
/// identical inputs produce byte-identical reports.
inline SensitivityReport build_sensitivity_report(
    const GeneratorFamily<double>& family, const MomentFunctional<double>& pi0,
    const std::vector<std::string>& xi_labels, const std::vector<Polynomial<double>>& xis,
    const std::vector<double>& times, int n, double tol = 1e-12, bool with_oracle = false,
    const OracleConfig& oracle_config = {}) {
    if (xi_labels.size() != xis.size())
        throw ConfigError("build_sensitivity_report: label/function count mismatch");
    SensitivityReport report;
    report.xi_labels = xi_labels;
    report.test_functions = xis;
    report.times = times;
    report.values.assign(xis.size(), std::vector<double>(times.size(), 0.0));
    if (with_oracle)
        report.oracle_values.assign(xis.size(), std::vector<double>(times.size(), 0.0));

    for (size_t i = 0; i < xis.size(); ++i) {
        for (size_t k = 0; k < times.size(); ++k) {
            report.values[i][k] =
                semigroup_sensitivity(family, pi0, xis[i], times[k], n, tol, &report.stats);
            if (with_oracle) {
                OracleResult r = central_difference_sensitivity(family, pi0, xis[i], times[k], n,
                                                                oracle_config, tol, &report.stats);
                report.oracle_values[i][k] = r.value;
                double d = std::fabs(report.values[i][k] - r.value);
                if (d > report.max_abs_discrepancy) report.max_abs_discrepancy = d;
            }
        }
    }
    return report;
}

namespace detail {

inline std::string fmt_double(double x) { return ScalarTraits<double>::to_string(x); }

}  // namespace detail

/// CSV with the fixed columns xi_label,t,value,oracle,abs_diff; the last two
/// stay empty when no oracle ran.
inline std::string report_to_csv(const SensitivityReport& report) {
    std::ostringstream out;
    out << "xi_label,t,value,oracle,abs_diff\n";
    for (size_t i = 0; i < report.test_functions.size(); ++i)
        for (size_t k = 0; k < report.times.size(); ++k) {
            out << report.xi_labels[i] << ',' << detail::fmt_double(report.times[k]) << ','
                << detail::fmt_double(report.values[i][k]) << ',';
            if (report.has_oracle()) {
                double o = report.oracle_values[i][k];
                out << detail::fmt_double(o) << ','
                    << detail::fmt_double(std::fabs(report.values[i][k] - o));
            } else {
                out << ',';
            }
            out << '\n';
        }
    return out.str();
}

inline nlohmann::json report_to_json(const SensitivityReport& report) {
    nlohmann::json results = nlohmann::json::array();
    for (size_t i = 0; i < report.test_functions.size(); ++i)
        for (size_t k = 0; k < report.times.size(); ++k) {
            nlohmann::json row{{"xi", report.xi_labels[i]},
                               {"t", report.times[k]},
                               {"value", report.values[i][k]}};
            if (report.has_oracle()) {
                row["oracle"] = report.oracle_values[i][k];
                row["abs_diff"] = std::fabs(report.values[i][k] - report.oracle_values[i][k]);
            }
            results.push_back(std::move(row));
        }
    nlohmann::json j{{"results", std::move(results)},
                     {"diagnostics",
                      {{"max_terms_used", report.stats.max_terms_used},
                       {"max_squarings", report.stats.max_squarings},
                       {"engine_calls", report.stats.calls}}}};
    if (report.has_oracle()) j["max_abs_discrepancy"] = report.max_abs_discrepancy;
    return j;
}

/// Moment vector as CSV rows (n, m_n). Exact scalars keep their "num/den"
/// form.
template <ScalarField S>
std::string moments_to_csv(const MomentFunctional<S>& mu) {
    std::ostringstream out;
    out << "n,m_n\n";
    for (int k = 0; k <= mu.truncation_degree(); ++k)
        out << k << ',' << ScalarTraits<S>::to_string(mu.moment(k)) << '\n';
    return out.str();
}

template <ScalarField S>
nlohmann::json moments_to_json(const MomentFunctional<S>& mu) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k <= mu.truncation_degree(); ++k) {
        if constexpr (ScalarTraits<S>::is_exact)
            arr.push_back(ScalarTraits<S>::to_string(mu.moment(k)));
        else
            arr.push_back(mu.moment(k));
    }
    return arr;
}

}  // namespace semisens
