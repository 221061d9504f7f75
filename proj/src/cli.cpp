#include "nabla/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nabla/dfc.hpp"
#include "nabla/errors.hpp"
#include "nabla/rl_ops.hpp"
#include "nabla/schrodinger.hpp"
#include "nabla/serialization.hpp"
#include "nabla/special_functions.hpp"
#include "nabla/verify.hpp"

namespace nabla {

namespace {

constexpr double kDefaultResidualTol = 1e-8;
constexpr double kDefaultEquivTol = 1e-6;

struct Tolerances {
    double residual = kDefaultResidualTol;
    double equivalence = kDefaultEquivTol;
};

Tolerances env_tolerances() {
    Tolerances tol;
    if (const char* raw = std::getenv("NABLA_DFC_TOL")) {
        try {
            std::size_t used = 0;
            const std::string s(raw);
            const double v = std::stod(s, &used);
            if (used != s.size() || !(v > 0.0)) {
                throw std::invalid_argument("not a positive real");
            }
            tol.residual = v;
            tol.equivalence = v;
        } catch (const std::exception&) {
            throw usage_error(
                "NABLA_DFC_TOL must be a positive real number");
        }
    }
    return tol;
}

void emit_scalar(std::ostream& out, const std::string& format, double value,
                 const char* extra_key = nullptr,
                 const char* extra_value = nullptr) {
    if (format == "text") {
        out << json(value).dump() << "\n";
        return;
    }
    if (format == "csv") {
        out << "value\n" << json(value).dump() << "\n";
        return;
    }
    json doc{{"value", value}};
    if (extra_key != nullptr) {
        doc[extra_key] = extra_value;
    }
    out << doc.dump(2) << "\n";
}

GridFunction load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw usage_error("cannot open input file: " + path);
    }
    return parse_grid_csv(in);
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    double start = 0.0;
    double stop = 0.0;
    long n = 0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(spec);
    if (!(is >> start >> c1 >> stop >> c2 >> n) || c1 != ':' || c2 != ':' ||
        !is.eof()) {
        throw usage_error("--grid must have the form start:stop:n");
    }
    if (!(start > 0.0) || stop < start || n < 1) {
        throw usage_error("--grid needs 0 < start <= stop and n >= 1");
    }
    std::vector<double> grid;
    if (n == 1) {
        grid.push_back(start);
        return grid;
    }
    for (long i = 0; i < n; ++i) {
        grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(n - 1));
    }
    return grid;
}

struct DfcArgs {
    double nu = 0.0;
    std::int64_t base = 0;
    std::int64_t t = 0;
    std::string input;
    std::optional<double> constant;
    std::string input_y;
    std::optional<double> constant_y;
    bool base_given = false;
};

GridFunction resolve_grid(const DfcArgs& a) {
    if (!a.input.empty()) {
        GridFunction u = load_grid(a.input);
        if (a.base_given && u.base != a.base) {
            std::ostringstream os;
            os << "--base " << a.base << " conflicts with CSV base " << u.base;
            throw usage_error(os.str());
        }
        return u;
    }
    if (!a.constant) {
        throw usage_error("one of --input or --const is required");
    }
    if (a.t < a.base) {
        throw usage_error("--t must be >= --base for a constant function");
    }
    GridFunction u;
    u.base = a.base;
    u.values.assign(static_cast<std::size_t>(a.t - a.base) + 1, *a.constant);
    return u;
}

int dispatch(CLI::App& app, std::ostream& out) {
    const std::string format =
        app.count("--format") ? app.get_option("--format")->as<std::string>()
                              : "json";
    const Tolerances tol = env_tolerances();

    if (auto* special = app.get_subcommand_no_throw("special");
        special != nullptr && special->parsed()) {
        if (auto* c = special->get_subcommand_no_throw("gamma");
            c != nullptr && c->parsed()) {
            const double x = c->get_option("--x")->as<double>();
            const bool use_log = c->count("--log") > 0;
            emit_scalar(out, format, use_log ? log_gamma(x) : gamma_fn(x));
            return 0;
        }
        if (auto* c = special->get_subcommand_no_throw("binom");
            c != nullptr && c->parsed()) {
            emit_scalar(out, format,
                        binomial_general(c->get_option("--nu")->as<double>(),
                                         c->get_option("--n")
                                             ->as<std::int64_t>()));
            return 0;
        }
        if (auto* c = special->get_subcommand_no_throw("1f1");
            c != nullptr && c->parsed()) {
            emit_scalar(out, format,
                        kummer_1f1(c->get_option("--a")->as<double>(),
                                   c->get_option("--b")->as<double>(),
                                   c->get_option("--z")->as<double>()));
            return 0;
        }
        throw usage_error("special requires a subcommand: gamma, binom, 1f1");
    }

    if (auto* dfc = app.get_subcommand_no_throw("dfc");
        dfc != nullptr && dfc->parsed()) {
        for (const char* name : {"sum", "diff", "leibniz"}) {
            auto* c = dfc->get_subcommand_no_throw(name);
            if (c == nullptr || !c->parsed()) {
                continue;
            }
            DfcArgs a;
            a.nu = c->get_option("--nu")->as<double>();
            a.base = c->get_option("--base")->as<std::int64_t>();
            a.base_given = c->count("--base") > 0;
            a.t = c->get_option("--t")->as<std::int64_t>();
            if (c->count("--input") > 0) {
                a.input = c->get_option("--input")->as<std::string>();
            }
            if (c->count("--const") > 0) {
                a.constant = c->get_option("--const")->as<double>();
            }
            const GridFunction u = resolve_grid(a);
            double value = 0.0;
            const std::string cmd(name);
            if (cmd == "sum") {
                value = fractional_sum(u, a.nu, a.t);
            } else if (cmd == "diff") {
                value = fractional_difference(u, a.nu, a.t);
            } else {
                if (c->count("--input-y") > 0) {
                    a.input_y = c->get_option("--input-y")->as<std::string>();
                }
                if (c->count("--const-y") > 0) {
                    a.constant_y = c->get_option("--const-y")->as<double>();
                }
                if (!a.input_y.empty() && a.constant_y) {
                    throw usage_error(
                        "--input-y and --const-y are mutually exclusive");
                }
                GridFunction y;
                if (!a.input_y.empty()) {
                    y = load_grid(a.input_y);
                } else {
                    y.base = u.base;
                    y.values.assign(u.values.size(),
                                    a.constant_y.value_or(1.0));
                }
                if (u.base != 0 || y.base != 0) {
                    throw usage_error("leibniz requires grids based at 0");
                }
                value = leibniz_difference(u, y, a.nu, a.t);
            }
            emit_scalar(out, format, value);
            return 0;
        }
        throw usage_error("dfc requires a subcommand: sum, diff, leibniz");
    }

    if (auto* rl = app.get_subcommand_no_throw("rl");
        rl != nullptr && rl->parsed()) {
        auto* c = rl->get_subcommand_no_throw("integrate");
        if (c != nullptr && c->parsed()) {
            const double cc = c->get_option("--c")->as<double>();
            const double p = c->get_option("--p")->as<double>();
            const double mu = c->get_option("--mu")->as<double>();
            const double r = c->get_option("--r")->as<double>();
            const bool quad = c->count("--quadrature") > 0;
            if (!(r > 0.0)) {
                throw usage_error("--r must be positive");
            }
            double value = 0.0;
            if (quad) {
                value = rl_integral_quadrature({1.0, cc, p}, mu, r);
            } else {
                value = evaluate(rl_exp_power_closed_form(cc, p, mu), r);
            }
            if (format == "json") {
                json doc{{"value", value},
                         {"method", quad ? "quadrature" : "closed_form"}};
                out << doc.dump(2) << "\n";
            } else {
                emit_scalar(out, format, value);
            }
            return 0;
        }
        throw usage_error("rl requires the subcommand: integrate");
    }

    if (auto* solve = app.get_subcommand_no_throw("solve");
        solve != nullptr && solve->parsed()) {
        const bool physical = solve->count("--physical") > 0;
        const int rho = solve->get_option("--rho")->as<int>();
        EquationParams ep;
        if (physical) {
            if (solve->count("--eta") > 0) {
                throw usage_error("--eta cannot be combined with "
                                  "--physical");
            }
            PhysicalParams pp;
            pp.m = solve->get_option("--m")->as<double>();
            pp.hbar = solve->get_option("--hbar")->as<double>();
            pp.epsilon = solve->get_option("--epsilon")->as<double>();
            pp.a_pot = solve->get_option("--a")->as<double>();
            pp.b_pot = solve->get_option("--b")->as<double>();
            pp.c_pot = solve->get_option("--c")->as<double>();
            pp.ell = solve->get_option("--ell")->as<std::int64_t>();
            pp.rho = rho;
            ep = map_physical(pp);
        } else if (solve->count("--eta") > 0) {
            if (solve->count("--alpha-sq") > 0) {
                throw usage_error(
                    "--eta and --alpha-sq are mutually exclusive");
            }
            ep = equation_from_rate(
                solve->get_option("--eta")->as<double>(),
                solve->get_option("--beta")->as<double>(),
                solve->get_option("--gamma")->as<double>(),
                solve->get_option("--delta")->as<double>(), rho);
        } else {
            if (solve->count("--alpha-sq") == 0) {
                throw usage_error(
                    "either --alpha-sq or --eta is required");
            }
            ep.alpha_sq = solve->get_option("--alpha-sq")->as<double>();
            ep.beta = solve->get_option("--beta")->as<double>();
            ep.gamma = solve->get_option("--gamma")->as<double>();
            ep.delta = solve->get_option("--delta")->as<double>();
            ep.rho = rho;
            validate(ep);
        }
        const Branch branch = branch_from_string(
            solve->get_option("--branch")->as<std::string>());
        const SolutionRecord sr =
            construct_solution(derive_branches(ep), branch);
        const json doc = solution_to_json(sr);
        std::string out_path;
        if (solve->count("--out") > 0) {
            out_path = solve->get_option("--out")->as<std::string>();
        }
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) {
                throw usage_error("cannot open output file: " + out_path);
            }
            f << doc.dump(2) << "\n";
        } else {
            out << doc.dump(2) << "\n";
        }
        return 0;
    }

    if (auto* verify = app.get_subcommand_no_throw("verify");
        verify != nullptr && verify->parsed()) {
        const bool has_example = verify->count("--example") > 0;
        const bool has_solution = verify->count("--solution") > 0;
        if (has_example && has_solution) {
            throw usage_error("--example and --solution are mutually "
                              "exclusive");
        }
        SuiteReport rep;
        if (has_example) {
            rep = run_builtin_example(
                verify->get_option("--example")->as<int>(), tol.residual,
                tol.equivalence);
        } else if (has_solution) {
            const std::string path =
                verify->get_option("--solution")->as<std::string>();
            std::ifstream f(path);
            if (!f) {
                throw usage_error("cannot open solution file: " + path);
            }
            json doc;
            try {
                doc = json::parse(f);
            } catch (const json::exception& e) {
                throw usage_error(std::string("invalid solution JSON: ") +
                                  e.what());
            }
            std::vector<double> grid = default_grid();
            if (verify->count("--grid") > 0) {
                grid = parse_grid_spec(
                    verify->get_option("--grid")->as<std::string>());
            }
            rep = verify_solution_record(solution_from_json(doc), grid,
                                         tol.residual, tol.equivalence);
        } else {
            const auto seed =
                verify->get_option("--seed")->as<std::uint64_t>();
            const auto trials =
                verify->get_option("--trials")->as<std::int64_t>();
            if (trials < 1) {
                throw usage_error("--trials must be >= 1");
            }
            rep = identity_suite(seed, trials);
        }
        out << report_to_json(rep).dump(2) << "\n";
        return rep.all_pass() ? 0 : 3;
    }

    throw usage_error(
        "a subcommand is required: special, dfc, rl, solve, verify");
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{
        "Discrete and continuous fractional-calculus toolkit with a "
        "closed-form radial equation solver"};
    app.set_help_all_flag("--help-all", "print help for all subcommands");
    app.add_option("--format", "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->default_str("json");

    auto* special =
        app.add_subcommand("special", "special-function evaluations");
    auto* sp_gamma = special->add_subcommand("gamma", "gamma function");
    sp_gamma->add_option("--x", "argument")->required();
    sp_gamma->add_flag("--log", "return log of the absolute value");
    auto* sp_binom =
        special->add_subcommand("binom", "generalized binomial coefficient");
    sp_binom->add_option("--nu", "upper (real) argument")->required();
    sp_binom->add_option("--n", "lower (integer) argument")->required();
    auto* sp_1f1 =
        special->add_subcommand("1f1", "confluent hypergeometric function");
    sp_1f1->add_option("--a", "numerator parameter")->required();
    sp_1f1->add_option("--b", "denominator parameter")->required();
    sp_1f1->add_option("--z", "argument")->required();

    auto* dfc =
        app.add_subcommand("dfc", "discrete nabla fractional operators");
    for (const auto& [name, desc] :
         {std::pair<const char*, const char*>{"sum", "fractional sum"},
          {"diff", "fractional difference"},
          {"leibniz", "product expansion of the fractional difference"}}) {
        auto* c = dfc->add_subcommand(name, desc);
        c->add_option("--nu", "operator order")->required();
        c->add_option("--base", "grid base point")->default_val(0);
        c->add_option("--t", "evaluation point")->required();
        c->add_option("--input", "CSV file with header t,value");
        c->add_option("--const", "constant function value");
        if (std::string(name) == "leibniz") {
            c->add_option("--input-y", "CSV file for the second factor");
            c->add_option("--const-y",
                          "constant value for the second factor (default 1)");
        }
    }

    auto* rl = app.add_subcommand("rl", "continuous fractional operators on "
                                        "exp-power functions");
    auto* rl_int = rl->add_subcommand(
        "integrate", "fractional integral of e^{c s} s^p from 0");
    rl_int->add_option("--c", "exponential rate")->required();
    rl_int->add_option("--p", "power exponent")->required();
    rl_int->add_option("--mu", "integral order (> 0)")->required();
    rl_int->add_option("--r", "evaluation point (> 0)")->required();
    rl_int->add_flag("--quadrature",
                     "evaluate by adaptive quadrature instead of the "
                     "closed form");

    auto* solve = app.add_subcommand(
        "solve", "construct a particular solution of the radial equation");
    solve->add_option("--rho", "power of the r^rho potential term")
        ->check(CLI::IsMember({0, -1, -2}))
        ->required();
    solve->add_option("--alpha-sq", "coefficient alpha^2");
    solve->add_option("--beta", "coefficient beta")->default_val(0.0);
    solve->add_option("--gamma", "coefficient gamma")->default_val(0.0);
    solve->add_option("--delta", "coefficient delta")->default_val(0.0);
    solve->add_option("--branch", "solution branch: I, II, III or IV")
        ->required();
    solve->add_option("--eta",
                      "take this value as the exponential rate and "
                      "rebuild alpha^2 from it");
    solve->add_option("--out", "write the solution document to this path");
    solve->add_flag("--physical",
                    "derive coefficients from physical parameters");
    solve->add_option("--m", "mass")->default_val(1.0);
    solve->add_option("--hbar", "reduced Planck constant")->default_val(1.0);
    solve->add_option("--epsilon", "energy")->default_val(-1.0);
    solve->add_option("--a", "strength of the 1/r^2 potential term")
        ->default_val(0.0);
    solve->add_option("--b", "strength of the -1/r potential term")
        ->default_val(0.0);
    solve->add_option("--c", "strength of the r^rho potential term")
        ->default_val(0.0);
    solve->add_option("--ell", "angular momentum quantum number")
        ->default_val(0);

    auto* verify = app.add_subcommand(
        "verify", "verification reports: built-in scenarios, solution "
                  "documents, or the randomized identity suite");
    verify->add_option("--example", "built-in scenario index")
        ->check(CLI::IsMember({1, 2, 3}));
    verify->add_option("--solution", "solution document path");
    verify->add_option("--grid", "evaluation grid start:stop:n");
    verify->add_option("--seed", "identity suite seed")->default_val(42);
    verify->add_option("--trials", "identity suite trials per check")
        ->default_val(200);

    app.require_subcommand(0, 1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        return dispatch(app, out);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nabla
