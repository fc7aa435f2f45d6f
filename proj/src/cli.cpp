#include "fracspec/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fracspec/errors.hpp"
#include "fracspec/experiments.hpp"
#include "fracspec/solver.hpp"

namespace fracspec::cli {

namespace {

using nlohmann::json;

std::string num(double v) { return fmt::format("{:.17g}", v); }
std::string human(double v) { return fmt::format("{:.10g}", v); }

template <typename T>
T field(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(fmt::format("config field '{}' is missing or has the wrong type", key));
    }
}

template <typename T>
void optional_field(const json& j, const char* key, T& target) {
    if (j.contains(key)) target = field<T>(j, key);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path.string());
    return os;
}

void prepare_dir(const std::filesystem::path& out, const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out.string() + ": " + ec.message());
    auto os = open_output(out / "config.json");
    os << to_json(cfg).dump(2) << '\n';
}

int require_N(const RunConfig& cfg) {
    if (!cfg.N) throw ConfigError("config field 'N' is required for this command");
    return *cfg.N;
}

const std::string& single_k(const RunConfig& cfg) {
    if (cfg.k.size() != 1) throw ConfigError("this command takes a single diffusivity 'k'");
    return cfg.k.front();
}

void write_header(std::ostream& os, const ProblemSpec& spec, const RunConfig& cfg) {
    const bool b_zero = spec.b.is_constant() && spec.b.eval(0.5) == 0.0;
    const auto pred = predicted_rates(spec.fp, b_zero, smooth_data, spec.variant);
    os << "alpha = " << human(spec.fp.alpha()) << '\n'
       << "r = " << human(spec.fp.r()) << '\n'
       << "beta = " << human(spec.fp.beta()) << '\n'
       << "c** = " << human(spec.fp.c_star_star()) << '\n'
       << "variant = " << to_string(spec.variant) << '\n'
       << "b = " << cfg.b << "\nc = " << cfg.c << "\nf = " << cfg.f << '\n'
       << "predicted rate L2 = " << fmt::format("{:.2f}", pred.rate_l2) << '\n'
       << "predicted rate energy = " << fmt::format("{:.2f}", pred.rate_energy) << '\n';
}

void write_diagnostics(std::ostream& os, const SolveDiagnostics& d) {
    os << "k_min = " << human(d.k_min) << '\n'
       << "condition estimate = " << human(d.condition_estimate) << '\n'
       << "residual = " << human(d.residual) << '\n'
       << "reciprocal pivot growth = " << human(d.reciprocal_pivot_growth) << '\n'
       << "rhs[0] = " << num(d.rhs0) << '\n';
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ParseError& e) {
        err << "expression error: " << e.what() << '\n';
        return exit_config;
    } catch (const EvalError& e) {
        err << "coefficient error: " << e.what() << '\n';
        return exit_config;
    } catch (const CoefficientError& e) {
        err << "coefficient error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "parameter error: " << e.what() << '\n';
        return exit_config;
    } catch (const SingularMatrixError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"alpha", "r", "variant", "k", "b", "c", "f", "N", "N_ref",
                                             "Ns", "quad_points", "grid_points", "output"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) throw ConfigError(fmt::format("unknown config field '{}'", key));
    }

    RunConfig cfg;
    cfg.alpha = field<double>(j, "alpha");
    cfg.r = field<double>(j, "r");
    const auto variant = j.contains("variant") ? field<std::string>(j, "variant") : std::string("acute");
    if (variant == "acute") {
        cfg.variant = Variant::acute;
    } else if (variant == "grave") {
        cfg.variant = Variant::grave;
    } else {
        throw ConfigError("variant must be \"acute\" or \"grave\", got \"" + variant + "\"");
    }
    if (!j.contains("k")) throw ConfigError("config field 'k' is missing");
    if (j.at("k").is_string()) {
        cfg.k = {j.at("k").get<std::string>()};
    } else {
        cfg.k = field<std::vector<std::string>>(j, "k");
        if (cfg.k.empty()) throw ConfigError("config field 'k' must not be empty");
    }
    optional_field(j, "b", cfg.b);
    optional_field(j, "c", cfg.c);
    cfg.f = field<std::string>(j, "f");
    if (j.contains("N")) cfg.N = field<int>(j, "N");
    optional_field(j, "N_ref", cfg.N_ref);
    optional_field(j, "Ns", cfg.Ns);
    if (j.contains("quad_points")) cfg.quad_points = field<int>(j, "quad_points");
    optional_field(j, "grid_points", cfg.grid_points);
    optional_field(j, "output", cfg.output);

    if (!(cfg.alpha > 1.0 && cfg.alpha < 2.0)) throw ConfigError("alpha must lie in (1,2)");
    if (!(cfg.r >= 0.0 && cfg.r <= 1.0)) throw ConfigError("r must lie in [0,1]");
    if (cfg.N && *cfg.N < 1) throw ConfigError("N must be at least 1");
    if (cfg.N && *cfg.N >= 256 - 20) throw ConfigError("N is too large for the quadrature (max 235)");
    if (cfg.N_ref < 2 || cfg.N_ref >= 256 - 20) throw ConfigError("N_ref must lie in [2, 235]");
    if (cfg.grid_points < 2) throw ConfigError("grid_points must be at least 2");
    if (cfg.quad_points && cfg.N && *cfg.quad_points < *cfg.N + 20) {
        throw ConfigError("quad_points must be at least N + 20");
    }
    if (cfg.quad_points && *cfg.quad_points > 256) throw ConfigError("quad_points must not exceed 256");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& cfg) {
    json j;
    j["alpha"] = cfg.alpha;
    j["r"] = cfg.r;
    j["variant"] = to_string(cfg.variant);
    if (cfg.k.size() == 1) {
        j["k"] = cfg.k.front();
    } else {
        j["k"] = cfg.k;
    }
    j["b"] = cfg.b;
    j["c"] = cfg.c;
    j["f"] = cfg.f;
    if (cfg.N) j["N"] = *cfg.N;
    j["N_ref"] = cfg.N_ref;
    if (!cfg.Ns.empty()) j["Ns"] = cfg.Ns;
    if (cfg.quad_points) {
        j["quad_points"] = *cfg.quad_points;
    } else if (cfg.N) {
        j["quad_points"] = *cfg.N + 20;
    }
    j["grid_points"] = cfg.grid_points;
    j["output"] = cfg.output;
    return j;
}

ProblemSpec make_problem(const RunConfig& cfg, const std::string& k, int N) {
    ProblemSpec spec{FracParams::solve_beta(cfg.alpha, cfg.r),
                     cfg.variant,
                     Expr::parse(k),
                     Expr::parse(cfg.b),
                     Expr::parse(cfg.c),
                     Expr::parse(cfg.f),
                     N,
                     cfg.quad_points.value_or(0),
                     cfg.N_ref};
    spec.validate();
    return spec;
}

int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto spec = make_problem(cfg, single_k(cfg), require_N(cfg));
        const auto sol = solve(spec);
        prepare_dir(out, cfg);

        auto csv = open_output(out / "solution.csv");
        csv << "x,u\n";
        for (int i = 0; i < cfg.grid_points; ++i) {
            const double x = static_cast<double>(i) / (cfg.grid_points - 1);
            csv << num(x) << ',' << num(sol.u(x)) << '\n';
        }

        auto summary = open_output(out / "summary.txt");
        write_header(summary, spec, cfg);
        summary << "N = " << spec.N << '\n';
        write_diagnostics(summary, sol.diagnostics);
        return exit_ok;
    });
}

int cmd_converge(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.Ns.empty()) throw ConfigError("config field 'Ns' is required for converge");
        const auto spec = make_problem(cfg, single_k(cfg), cfg.Ns.front());
        const auto report = run_convergence(spec, cfg.Ns, cfg.N_ref);
        prepare_dir(out, cfg);

        const auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
        auto csv = open_output(out / "convergence.csv");
        csv << "N,err_L2,rate_L2,err_H1,rate_H1\n";
        for (const auto& row : report.rows) {
            csv << row.N << ',' << num(row.err_l2) << ',' << opt(row.rate_l2) << ',' << num(row.err_h1) << ','
                << opt(row.rate_h1) << '\n';
        }
        csv << fmt::format("# pred,{:.2f},{:.2f}\n", report.predicted.rate_l2, report.predicted.rate_energy);

        auto summary = open_output(out / "summary.txt");
        write_header(summary, spec, cfg);
        summary << "N_ref = " << report.N_ref << '\n';
        for (const auto& row : report.rows) {
            summary << fmt::format("N = {:3d}  err_L2 = {:.3e}  rate = {:>6}  err_H1 = {:.3e}  rate = {:>6}\n", row.N,
                                   row.err_l2, row.rate_l2 ? fmt::format("{:.2f}", *row.rate_l2) : "",
                                   row.err_h1, row.rate_h1 ? fmt::format("{:.2f}", *row.rate_h1) : "");
        }
        return exit_ok;
    });
}

int cmd_compare(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err) {
    return guarded(err, [&] {
        const int N = require_N(cfg);
        std::vector<ComparisonReport> reports;
        for (const auto& k : cfg.k) reports.push_back(run_comparison(make_problem(cfg, k, N), cfg.grid_points));
        prepare_dir(out, cfg);

        auto summary = open_output(out / "summary.txt");
        write_header(summary, reports.front().config, cfg);
        summary << "N = " << N << '\n';
        for (std::size_t v = 0; v < reports.size(); ++v) {
            const auto& rep = reports[v];
            const std::string name = reports.size() == 1 ? "compare.csv" : fmt::format("compare_k{}.csv", v + 1);
            auto csv = open_output(out / name);
            csv << "x,u_acute,u_grave\n";
            for (std::size_t i = 0; i < rep.x.size(); ++i) {
                csv << num(rep.x[i]) << ',' << num(rep.u_acute[i]) << ',' << num(rep.u_grave[i]) << '\n';
            }

            double max_diff = 0.0;
            for (std::size_t i = 0; i < rep.x.size(); ++i) {
                max_diff = std::max(max_diff, std::abs(rep.u_acute[i] - rep.u_grave[i]));
            }
            summary << "\n[" << name << "] k = " << cfg.k[v] << '\n'
                    << "max |u_acute - u_grave| = " << human(max_diff) << '\n';
            for (double bp : rep.config.k.breakpoints()) {
                const auto qa = interface_quotients(rep.acute, bp);
                const auto qg = interface_quotients(rep.grave, bp);
                summary << "interface x = " << human(bp) << ": acute slopes " << human(qa.left) << " | "
                        << human(qa.right) << ", grave slopes " << human(qg.left) << " | " << human(qg.right)
                        << '\n';
            }
        }
        return exit_ok;
    });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral Petrov-Galerkin solver for two-sided fractional diffusion-advection-reaction problems"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    const auto add = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config's 'output')");
        return sub;
    };
    auto* solve_cmd = add("solve", "solve one problem and sample u on a grid");
    auto* converge_cmd = add("converge", "convergence table against a reference solution");
    auto* compare_cmd = add("compare", "acute vs grave solutions on a grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_config;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    if (!out_dir.empty()) cfg.output = out_dir;
    const std::filesystem::path dir = cfg.output;

    int code = exit_config;
    if (solve_cmd->parsed()) code = cmd_solve(cfg, dir, err);
    if (converge_cmd->parsed()) code = cmd_converge(cfg, dir, err);
    if (compare_cmd->parsed()) code = cmd_compare(cfg, dir, err);
    if (code == exit_ok) out << "wrote " << dir.string() << '\n';
    return code;
}

}  // namespace fracspec::cli
