// semisens: parameter sensitivities of polynomial-coefficient diffusion
// semigroups, with built-in Wright-Fisher and Ornstein-Uhlenbeck models,
// a finite-difference oracle, and validation suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <semisens/semisens.hpp>

namespace {

using namespace semisens;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiscrepancy = 2;

Polynomial<double> parse_xi(const std::string& text) {
    if (text == "1") return Polynomial<double>::constant(1.0);
    if (text == "x") return Polynomial<double>::monomial(1);
    if (text.rfind("x^", 0) == 0) {
        try {
            size_t used = 0;
            int k = std::stoi(text.substr(2), &used);
            if (used == text.size() - 2 && k >= 0) return Polynomial<double>::monomial(k);
        } catch (const std::exception&) {
        }
        throw ConfigError("cannot parse test function '" + text + "'");
    }
    if (!text.empty() && text.front() == '[') {
        nlohmann::json arr;
        try {
            arr = nlohmann::json::parse(text);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse coefficient array '" + text + "'");
        }
        if (!arr.is_array() || arr.empty())
            throw ConfigError("coefficient array must be a nonempty JSON array: '" + text + "'");
        std::vector<double> coeffs;
        for (const auto& c : arr) {
            if (!c.is_number())
                throw ConfigError("coefficient array must hold numbers: '" + text + "'");
            coeffs.push_back(c.get<double>());
        }
        return Polynomial<double>(std::move(coeffs));
    }
    throw ConfigError("test function must be '1', 'x', 'x^k' or a JSON coefficient array, got '" +
                      text + "'");
}

MomentFunctional<double> load_pi0(const std::string& path, int degree) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open moment file '" + path + "'");
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
    if (!arr.is_array() || static_cast<int>(arr.size()) < degree + 1)
        throw ConfigError("moment file must hold at least degree+1 = " +
                          std::to_string(degree + 1) + " entries");
    std::vector<double> m;
    for (int k = 0; k <= degree; ++k)
        m.push_back(detail::scalar_from_json<double>(arr[static_cast<size_t>(k)],
                                                     "pi0 entry " + std::to_string(k)));
    return MomentFunctional<double>(std::move(m));
}

Rational parse_rational_or_decimal(const std::string& s) {
    try {
        return Rational::from_string(s);
    } catch (const ConfigError&) {
    }
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) return Rational::from_double(v);
    } catch (const std::exception&) {
    }
    throw ConfigError("cannot parse '" + s + "' as a rational or decimal number");
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write to '" + out_path + "'");
    out << text;
}

struct SensitivityArgs {
    std::string model = "wf";
    double kappa = 0.0;
    bool half_diffusion = false;
    std::string family_path;
    std::string pi0_path;
    int degree = 16;
    std::vector<double> times;
    std::vector<std::string> xi_specs;
    double tol = 1e-12;
    bool oracle = false;
    double oracle_tol = 1e-6;
    std::string output = "csv";
    std::string out_path;
};

int run_sensitivity(const SensitivityArgs& args) {
    if (args.degree < 0) throw ConfigError("--degree must be nonnegative");
    for (double t : args.times)
        if (!(t >= 0)) throw ConfigError("--t values must be nonnegative");

    GeneratorFamily<double> family;
    MomentFunctional<double> pi0;
    if (args.model == "wf") {
        if (!(args.kappa > 0)) throw ConfigError("--model wf requires --kappa > 0");
        family = wf_family<double>(args.kappa, args.half_diffusion);
        pi0 = dirac(0.0, args.degree);
    } else if (args.model == "ou") {
        family = ou_family<double>();
        pi0 = gaussian_moments(0.0, 0.5, args.degree);
    } else if (args.model == "custom") {
        if (args.family_path.empty()) throw ConfigError("--model custom requires --family");
        if (args.pi0_path.empty()) throw ConfigError("--model custom requires --pi0");
        family = load_family<double>(args.family_path);
        pi0 = load_pi0(args.pi0_path, args.degree);
    } else {
        throw ConfigError("--model must be wf, ou or custom");
    }

    std::vector<Polynomial<double>> xis;
    for (const auto& spec : args.xi_specs) {
        xis.push_back(parse_xi(spec));
        if (xis.back().degree() > args.degree)
            throw ConfigError("test function '" + spec + "' has degree " +
                              std::to_string(xis.back().degree()) + " above --degree " +
                              std::to_string(args.degree));
    }

    OracleConfig oracle_config;
    oracle_config.tol_report = args.oracle_tol;
    auto report = build_sensitivity_report(family, pi0, args.xi_specs, xis, args.times,
                                           args.degree, args.tol, args.oracle, oracle_config);

    if (args.output == "csv") {
        write_output(report_to_csv(report), args.out_path);
    } else if (args.output == "json") {
        nlohmann::json j = report_to_json(report);
        j["model"] = args.model;
        if (args.model == "wf") j["kappa"] = args.kappa;
        j["degree"] = args.degree;
        j["tol"] = args.tol;
        write_output(j.dump(2) + "\n", args.out_path);
    } else {
        throw ConfigError("--output must be csv or json");
    }

    if (args.oracle && report.max_abs_discrepancy > args.oracle_tol) {
        std::cerr << "oracle discrepancy " << report.max_abs_discrepancy << " exceeds "
                  << args.oracle_tol << "\n";
        return kExitDiscrepancy;
    }
    return kExitOk;
}

struct RecursionArgs {
    int n = 2;
    std::string kappa = "1";
    double t = 1.0;
    int kmax = 0;
    double tol = 1e-12;
};

int run_wf_recursion(const RecursionArgs& args) {
    if (args.n < 2) throw ConfigError("--n must be >= 2");
    Rational kappa = parse_rational_or_decimal(args.kappa);
    if (!(kappa > Rational(0))) throw ConfigError("--kappa must be positive");

    int degree = 16;
    if (args.n > degree) {
        degree = args.n;
        std::cerr << "note: truncation degree raised to " << degree
                  << " to accommodate the requested basis element\n";
    }

    auto basis = wf_basis(args.n, kappa);
    auto series = wf_xi_sensitivity(args.n, kappa, args.t, args.kmax, args.tol);
    auto bs = wf_b_sequence(args.n, kappa, Rational(0), series.kmax_used - 1);

    std::printf("n = %d, kappa = %s, t = %g, kmax = %d%s, tol = %g\n", args.n,
                kappa.to_string().c_str(), args.t, series.kmax_used,
                args.kmax == 0 ? " (auto)" : "", args.tol);
    std::printf("lambda_n = %s\n", basis.lambda.to_string().c_str());
    for (int m = 2; m <= args.n; ++m)
        std::printf("gamma[%d] = %s\n", m, basis.gamma(m).to_string().c_str());
    const int shown = static_cast<int>(bs.values.size()) <= 33
                          ? static_cast<int>(bs.values.size())
                          : 16;
    for (int k = 0; k < shown; ++k)
        std::printf("b[%d] = %s\n", k, bs.values[static_cast<size_t>(k)].to_string().c_str());
    if (shown < static_cast<int>(bs.values.size()))
        std::printf("(b[%d..%d] omitted from display; they enter the sum below)\n", shown,
                    static_cast<int>(bs.values.size()) - 1);

    std::printf("series_value = %.17g\n", series.value);
    std::printf("tail_bound = %.3e\n", series.tail_bound);

    auto family = wf_family<double>(kappa.to_double());
    std::vector<double> coeffs;
    for (const auto& g : basis.xi.coeffs()) coeffs.push_back(g.to_double());
    auto nu = sensitivity_functional(family, dirac(0.0, degree), degree);
    double engine = pair(apply_v0(family, Polynomial<double>(std::move(coeffs)), args.t, degree,
                                  args.tol),
                         nu);
    double discrepancy = std::fabs(series.value - engine);
    std::printf("engine_value = %.17g\n", engine);
    std::printf("discrepancy = %.3e\n", discrepancy);

    if (discrepancy > 1e-8) {
        std::cerr << "recursion/engine discrepancy " << discrepancy << " exceeds 1e-8\n";
        return kExitDiscrepancy;
    }
    return kExitOk;
}

int run_validate(const std::string& scope) {
    std::vector<CheckResult> results;
    auto append = [&](std::vector<CheckResult> more) {
        for (auto& r : more) results.push_back(std::move(r));
    };
    if (scope == "errata") {
        auto errata = run_errata_checks();
        std::cout << errata_to_json(errata).dump(2) << "\n";
        for (const auto& e : errata)
            if (!e.confirmed) {
                std::cerr << "FAIL erratum " << e.id << " not confirmed\n";
                return kExitConfig;
            }
        return kExitOk;
    }
    if (scope == "all" || scope == "stationarity") append(validate_stationarity());
    if (scope == "all" || scope == "lemma") append(validate_lemma());
    if (scope == "all" || scope == "theorem") append(validate_theorem());
    if (scope == "all" || scope == "recursion") append(validate_recursion());
    if (scope == "all") append(validate_errata());
    if (results.empty())
        throw ConfigError("unknown validation scope '" + scope +
                          "' (expected all, stationarity, lemma, theorem, recursion or errata)");

    const CheckResult* first_failure = nullptr;
    for (const auto& r : results) {
        std::printf("%s %-42s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.pass && !first_failure) first_failure = &r;
    }
    if (first_failure) {
        std::cerr << "first failing check: " << first_failure->name << " ("
                  << first_failure->detail << ")\n";
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parameter sensitivities of polynomial-preserving diffusion semigroups"};
    app.require_subcommand(1);

    SensitivityArgs sens;
    auto* sens_cmd = app.add_subcommand(
        "sensitivity", "compute d/dtheta of <xi | U_theta(t)* pi0> at theta = 0");
    sens_cmd->add_option("--model", sens.model, "wf, ou or custom")->capture_default_str();
    sens_cmd->add_option("--kappa", sens.kappa, "WF mutation rate (required for --model wf)");
    sens_cmd->add_flag("--half-diffusion", sens.half_diffusion,
                       "use the x(1-x)/2 diffusion normalization (WF only; excluded from "
                       "closed-form checks)");
    sens_cmd->add_option("--family", sens.family_path, "JSON family description (custom model)");
    sens_cmd->add_option("--pi0", sens.pi0_path,
                         "JSON array of stationary moments (custom model)");
    sens_cmd->add_option("--degree", sens.degree, "truncation degree")->capture_default_str();
    sens_cmd->add_option("--t", sens.times, "evaluation times (repeatable)")->required();
    // one value per occurrence: keeps JSON coefficient arrays like [0,1,3]
    // intact instead of expanding them as CLI list syntax
    sens_cmd->add_option("--xi", sens.xi_specs,
                         "test functions: 1, x, x^k or JSON coefficients (repeatable)")
        ->required()
        ->allow_extra_args(false);
    sens_cmd->add_option("--tol", sens.tol, "engine tolerance")
        ->capture_default_str()
        ->envname("SEMISENS_TOL");
    sens_cmd->add_flag("--oracle", sens.oracle, "add finite-difference oracle columns");
    sens_cmd->add_option("--oracle-tol", sens.oracle_tol,
                         "exit 2 when |value - oracle| exceeds this")
        ->capture_default_str();
    sens_cmd->add_option("--output", sens.output, "csv or json")->capture_default_str();
    sens_cmd->add_option("--out", sens.out_path, "write to file instead of stdout");

    RecursionArgs rec;
    auto* rec_cmd = app.add_subcommand(
        "wf-recursion", "WF quasi-eigenbasis recursion report with engine cross-check");
    rec_cmd->add_option("--n", rec.n, "basis element degree (>= 2)")->required();
    rec_cmd->add_option("--kappa", rec.kappa, "mutation rate, decimal or num/den")
        ->capture_default_str();
    rec_cmd->add_option("--t", rec.t, "evaluation time")->capture_default_str();
    rec_cmd->add_option("--kmax", rec.kmax, "series truncation (0 = automatic)")
        ->capture_default_str();
    rec_cmd->add_option("--tol", rec.tol, "series tail tolerance")
        ->capture_default_str()
        ->envname("SEMISENS_TOL");

    std::string scope = "all";
    auto* val_cmd = app.add_subcommand("validate", "run a named validation suite");
    val_cmd->add_option("scope", scope,
                        "all, stationarity, lemma, theorem, recursion or errata")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sens_cmd->parsed()) return run_sensitivity(sens);
        if (rec_cmd->parsed()) return run_wf_recursion(rec);
        if (val_cmd->parsed()) return run_validate(scope);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
