// Command line front end: sweep-gamma, scaling, correlator, verify.
// Exit codes: 0 success, 1 failed checks, 2 usage/config error, 3 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <contsense/optimize.hpp>
#include <contsense/verify.hpp>

using nlohmann::json;
using namespace contsense;

namespace {

// Shortest representation that parses back to the same double; locale-free,
// so identical configs produce byte-identical files.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return json::parse(in);
}

void check_keys(const json& cfg, const std::vector<std::string>& allowed) {
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& item : cfg.items()) {
        bool known = false;
        for (const auto& key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("unknown config key: " + item.key());
    }
}

const std::vector<std::string> kModelKeys = {"family", "n", "gamma", "eta", "r", "axis"};
const std::vector<std::string> kCommonKeys = {"tol", "threads", "format", "out"};

std::vector<std::string> join_keys(std::initializer_list<std::vector<std::string>> lists) {
    std::vector<std::string> out;
    for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
    return out;
}

FamilyTag parse_family(const std::string& name) {
    if (name == "high_temperature") return FamilyTag::high_temperature;
    if (name == "dephasing_family") return FamilyTag::dephasing_family;
    if (name == "spin_squeezer") return FamilyTag::spin_squeezer;
    if (name == "single_qubit_loss") return FamilyTag::single_qubit_loss;
    throw std::invalid_argument("unknown model family: " + name);
}

Axis parse_axis(const std::string& name) {
    if (name == "x") return Axis::x;
    if (name == "y") return Axis::y;
    if (name == "z") return Axis::z;
    throw std::invalid_argument("axis must be x, y or z, got: " + name);
}

Route parse_route(const std::string& name) {
    if (name == "closed_form") return Route::closed_form;
    if (name == "correlator") return Route::correlator;
    if (name == "finite_difference") return Route::finite_difference;
    if (name == "spectrum") return Route::spectrum;
    throw std::invalid_argument("unknown qfi route: " + name);
}

const char* route_name(Route route) {
    switch (route) {
        case Route::closed_form: return "closed_form";
        case Route::correlator: return "correlator";
        case Route::finite_difference: return "finite_difference";
        case Route::spectrum: return "spectrum";
    }
    return "?";
}

ModelSpec parse_model(const json& cfg) {
    ModelSpec spec;
    spec.tag = parse_family(cfg.at("family").get<std::string>());
    spec.n_qubits = cfg.value("n", 2);
    spec.gamma = cfg.value("gamma", 1.0);
    spec.eta = cfg.value("eta", 0.0);
    spec.r = cfg.value("r", 1.0);
    const char* default_axis = (spec.tag == FamilyTag::spin_squeezer) ? "x" : "z";
    spec.axis = parse_axis(cfg.value("axis", default_axis));
    return spec;
}

// Values shared by every subcommand; command line flags override config keys.
struct CommonOptions {
    double tol = 1e-10;
    int threads = 1;
    std::string format = "csv";
    std::string out;
};

CommonOptions parse_common(const json& cfg, const std::string& flag_out,
                           const std::string& flag_format, int flag_threads,
                           double flag_tol) {
    CommonOptions common;
    common.tol = cfg.value("tol", common.tol);
    common.threads = cfg.value("threads", common.threads);
    common.format = cfg.value("format", common.format);
    common.out = cfg.value("out", common.out);
    if (!flag_out.empty()) common.out = flag_out;
    if (!flag_format.empty()) common.format = flag_format;
    if (flag_threads > 0) common.threads = flag_threads;
    if (flag_tol > 0.0) common.tol = flag_tol;
    if (common.format != "csv" && common.format != "json") {
        throw std::invalid_argument("format must be csv or json, got: " + common.format);
    }
    if (common.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (!(common.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    return common;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& trailer = {}) {
    std::string text;
    for (size_t i = 0; i < header.size(); ++i) {
        text += header[i];
        text += (i + 1 < header.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            text += row[i];
            text += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    for (const auto& line : trailer) {
        text += line;
        text += '\n';
    }
    return text;
}

// Both information kinds for one model at one coupling, by the chosen route.
struct QfiPair {
    QfiEstimate global;
    QfiEstimate env;
};

QfiPair qfi_pair(const ModelSpec& spec, double t_final, Route route,
                 const OptimizeOptions& opt) {
    QfiPair pair;
    switch (route) {
        case Route::closed_form: {
            const CorrelationModel corr = autocorrelator_analytic(spec);
            pair.global = qfi_global_from_correlator(corr, t_final);
            pair.env = qfi_env_from_correlator(corr, t_final);
            break;
        }
        case Route::correlator: {
            const SensorModel model = make_model(spec);
            const int n = std::max(opt.grid_points, 16);
            Eigen::VectorXd times(n + 1);
            for (int i = 0; i <= n; ++i) times(i) = 2.0 * t_final * i / n;
            const CorrelationModel corr = autocorrelator_numeric(model, times, opt.tol);
            pair.global = qfi_global_from_correlator(corr, t_final);
            pair.env = qfi_env_from_correlator(corr, t_final);
            break;
        }
        case Route::finite_difference: {
            const SensorModel model = make_model(spec);
            FiniteDiffOptions fopt;
            fopt.tol = opt.tol;
            fopt.theta_step = opt.theta_step;
            fopt.use_embedding = opt.use_embedding;
            pair.global = qfi_finite_difference(model, t_final, QfiKind::global, fopt);
            pair.env = qfi_finite_difference(model, t_final, QfiKind::environmental, fopt);
            break;
        }
        case Route::spectrum: {
            const SpectrumModel s = lorentzian_spectrum(autocorrelator_analytic(spec));
            pair.global = qfi_from_spectrum(s, t_final, QfiKind::global);
            pair.env = qfi_from_spectrum(s, t_final, QfiKind::environmental);
            break;
        }
    }
    return pair;
}

OptimizeOptions parse_optimize(const json& cfg, const CommonOptions& common) {
    OptimizeOptions opt;
    opt.route = parse_route(cfg.value("route", "closed_form"));
    opt.bracket_lo = cfg.value("bracket_lo", opt.bracket_lo);
    opt.bracket_hi = cfg.value("bracket_hi", opt.bracket_hi);
    opt.coarse_points = cfg.value("coarse_points", opt.coarse_points);
    opt.rel_tol = cfg.value("rel_tol", opt.rel_tol);
    opt.theta_step = cfg.value("theta_step", opt.theta_step);
    opt.grid_points = cfg.value("grid_points", opt.grid_points);
    opt.use_embedding = cfg.value("use_embedding", opt.use_embedding);
    opt.tol = common.tol;
    opt.threads = common.threads;
    return opt;
}

const std::vector<std::string> kRouteKeys = {"route",         "bracket_lo", "bracket_hi",
                                             "coarse_points", "rel_tol",    "theta_step",
                                             "grid_points",   "use_embedding"};

int cmd_sweep_gamma(const json& cfg, const CommonOptions& common) {
    check_keys(cfg, join_keys({kModelKeys, kCommonKeys, kRouteKeys,
                               {"t_final", "gamma_min", "gamma_max", "points"}}));
    const ModelSpec base = parse_model(cfg);
    const double t_final = cfg.at("t_final").get<double>();
    const double g_lo = cfg.at("gamma_min").get<double>();
    const double g_hi = cfg.at("gamma_max").get<double>();
    const int points = cfg.value("points", 50);
    if (!(g_lo > 0.0) || g_hi < g_lo) {
        throw std::invalid_argument("need 0 < gamma_min <= gamma_max");
    }
    if (points < 1) throw std::invalid_argument("points must be >= 1");
    const OptimizeOptions opt = parse_optimize(cfg, common);

    std::vector<double> gammas;
    if (g_hi == g_lo) {
        gammas.push_back(g_lo);  // degenerate bracket: a single row
    } else {
        const double llo = std::log(g_lo), lhi = std::log(g_hi);
        for (int i = 0; i < points; ++i) {
            gammas.push_back(std::exp(llo + (lhi - llo) * i / (points - 1)));
        }
    }

    std::vector<QfiPair> pairs(gammas.size());
    num::parallel_for(static_cast<int>(gammas.size()), common.threads, [&](int i) {
        ModelSpec spec = base;
        spec.gamma = gammas[i];
        OptimizeOptions inner = opt;
        inner.threads = 1;
        pairs[i] = qfi_pair(spec, t_final, opt.route, inner);
    });

    if (common.format == "json") {
        json rows = json::array();
        for (size_t i = 0; i < gammas.size(); ++i) {
            rows.push_back({{"gamma", gammas[i]},
                            {"gamma_T", gammas[i] * t_final},
                            {"I_E", pairs[i].env.value},
                            {"I_G", pairs[i].global.value},
                            {"route", route_name(opt.route)},
                            {"err", pairs[i].env.error_estimate}});
        }
        write_text(common.out, rows.dump(2) + "\n");
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < gammas.size(); ++i) {
        rows.push_back({fmt(gammas[i]), fmt(gammas[i] * t_final), fmt(pairs[i].env.value),
                        fmt(pairs[i].global.value), route_name(opt.route),
                        fmt(pairs[i].env.error_estimate)});
    }
    write_text(common.out, to_csv({"gamma", "gamma_T", "I_E", "I_G", "route", "err"}, rows));
    return 0;
}

int cmd_scaling(const json& cfg, const CommonOptions& common) {
    check_keys(cfg, join_keys({kModelKeys, kCommonKeys, kRouteKeys, {"t_final", "n_list"}}));
    const ModelSpec family = parse_model(cfg);
    const double t_final = cfg.at("t_final").get<double>();
    const std::vector<int> n_list = cfg.at("n_list").get<std::vector<int>>();
    if (n_list.empty()) throw std::invalid_argument("n_list must not be empty");
    const OptimizeOptions opt = parse_optimize(cfg, common);

    const ScalingFit fit = scaling_sweep(family, n_list, t_final, opt);

    if (common.format == "json") {
        json rows = json::array();
        for (const auto& row : fit.rows) {
            rows.push_back({{"n", row.n_qubits},
                            {"t", row.t_final},
                            {"gamma_opt", row.gamma_opt},
                            {"qfi_opt", row.qfi_opt},
                            {"route", route_name(row.route)},
                            {"err", row.error_estimate}});
        }
        const json doc = {
            {"rows", rows}, {"exponent", fit.exponent}, {"coefficient", fit.coefficient}};
        write_text(common.out, doc.dump(2) + "\n");
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : fit.rows) {
        rows.push_back({std::to_string(row.n_qubits), fmt(row.t_final), fmt(row.gamma_opt),
                        fmt(row.qfi_opt), route_name(row.route), fmt(row.error_estimate)});
    }
    write_text(common.out,
               to_csv({"n", "t", "gamma_opt", "qfi_opt", "route", "err"}, rows,
                      {"# exponent " + fmt(fit.exponent),
                       "# coefficient " + fmt(fit.coefficient)}));
    return 0;
}

int cmd_correlator(const json& cfg, const CommonOptions& common) {
    check_keys(cfg, join_keys({kModelKeys, kCommonKeys, {"t_max", "points"}}));
    const ModelSpec spec = parse_model(cfg);
    const double t_max = cfg.at("t_max").get<double>();
    const int points = cfg.value("points", 101);
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
    if (points < 4) throw std::invalid_argument("points must be >= 4");

    Eigen::VectorXd times(points);
    for (int i = 0; i < points; ++i) times(i) = t_max * i / (points - 1);
    const CorrelationModel numeric =
        autocorrelator_numeric(make_model(spec), times, common.tol);
    const CorrelationModel analytic = autocorrelator_analytic(spec);
    const double scale = std::abs(correlator_value(analytic, 0.0));

    if (common.format == "json") {
        json rows = json::array();
        for (int i = 0; i < points; ++i) {
            const double ana = correlator_value(analytic, times(i));
            rows.push_back(
                {{"t", times(i)},
                 {"C_numeric", numeric.values(i)},
                 {"C_analytic", ana},
                 {"rel_err", std::abs(numeric.values(i) - ana) / scale}});
        }
        write_text(common.out, rows.dump(2) + "\n");
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < points; ++i) {
        const double ana = correlator_value(analytic, times(i));
        rows.push_back({fmt(times(i)), fmt(numeric.values(i)), fmt(ana),
                        fmt(std::abs(numeric.values(i) - ana) / scale)});
    }
    write_text(common.out, to_csv({"t", "C_numeric", "C_analytic", "rel_err"}, rows));
    return 0;
}

int cmd_verify(const json& cfg, const CommonOptions& common) {
    check_keys(cfg, kCommonKeys);
    VerifyOptions opt;
    opt.threads = common.threads;
    opt.on_result = [](const CriterionResult& r) {
        std::printf("%s %02d %s: %s [%.1fs]\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.details.c_str(), r.seconds);
        std::fflush(stdout);
    };
    const VerifyReport report = run_acceptance(opt);

    json criteria = json::array();
    for (const auto& r : report.criteria) {
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"details", r.details},
                            {"seconds", r.seconds}});
    }
    const json doc = {{"all_passed", report.all_passed}, {"criteria", criteria}};
    if (!common.out.empty()) {
        write_text(common.out, doc.dump(2) + "\n");
    } else if (common.format == "json") {
        std::cout << doc.dump(2) << "\n";
    }
    return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"global and environmental information for monitored spin sensors"};
    app.require_subcommand(1);

    std::string config_path, flag_out, flag_format;
    int flag_threads = 0;
    double flag_tol = 0.0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* copt = cmd->add_option("--config", config_path, "JSON config file");
        if (config_required) copt->required();
        cmd->add_option("--out", flag_out, "output path (default stdout)");
        cmd->add_option("--format", flag_format, "csv or json");
        cmd->add_option("--threads", flag_threads, "worker cap");
        cmd->add_option("--tol", flag_tol, "propagation tolerance");
    };
    CLI::App* sweep = app.add_subcommand("sweep-gamma", "information across a coupling grid");
    CLI::App* scaling = app.add_subcommand("scaling", "optimized information vs qubit number");
    CLI::App* correlator = app.add_subcommand("correlator", "numeric vs analytic correlator");
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    add_common(sweep, true);
    add_common(scaling, true);
    add_common(correlator, true);
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 2;  // help exits clean, usage errors exit 2
    }

    try {
        json cfg = json::object();
        if (!config_path.empty()) cfg = load_config(config_path);
        const CommonOptions common =
            parse_common(cfg, flag_out, flag_format, flag_threads, flag_tol);
        if (sweep->parsed()) return cmd_sweep_gamma(cfg, common);
        if (scaling->parsed()) return cmd_scaling(cfg, common);
        if (correlator->parsed()) return cmd_correlator(cfg, common);
        return cmd_verify(cfg, common);
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
