#include "thetanull/json_io.hpp"
#include "thetanull/sing_scheme.hpp"
#include "thetanull/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

namespace tn = thetanull;
using tn::json;

namespace {

// exit-code contract: 0 success, 1 verification failure, 2 usage/schema,
// 3 numerical failure
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct CommonOpts {
    double tol = 1e-12;
    double rank_tol = 1e-6;
    double vanish_tol = 1e-9;
    double max_radius = 40.0;
    std::uint64_t seed = 1;
    int samples = 20;
    std::string output;

    tn::EvalConfig eval_config() const {
        tn::EvalConfig cfg;
        cfg.target_abs_error = tol;
        cfg.max_radius = max_radius;
        return cfg;
    }
    json config_json() const {
        return json{{"tol", tol},         {"rank_tol", rank_tol}, {"vanish_tol", vanish_tol},
                    {"max_radius", max_radius}, {"seed", seed},   {"samples", samples}};
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "target absolute evaluation error");
    cmd->add_option("--rank-tol", o.rank_tol, "relative numerical-rank tolerance");
    cmd->add_option("--vanish-tol", o.vanish_tol, "relative vanishing tolerance");
    cmd->add_option("--max-radius", o.max_radius, "lattice ellipsoid radius cap");
    cmd->add_option("--seed", o.seed, "seed for sampled verifications");
    cmd->add_option("--samples", o.samples, "sample count for sampled verifications");
    cmd->add_option("--output", o.output, "output path (default: stdout)");
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output);
        if (!out) tn::fail(tn::errc::invalid_argument, "cannot write " + o.output);
        out << text;
    }
}

json parse_inline(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        tn::fail(tn::errc::invalid_argument, std::string("malformed ") + what + ": " + e.what());
    }
}

tn::CMat direction_from_json(const json& j, int g) {
    tn::CMat E;
    if (j.is_array()) {
        // plain array of rows: a real direction
        const tn::CMat both = tn::cmat_from_json(json{{"re", j}, {"im", j}});
        E = both.real().cast<tn::cx>();
    } else {
        E = tn::cmat_from_json(j);
    }
    tn::require(E.rows() == g && E.cols() == g, tn::errc::invalid_argument,
                "direction must be g x g");
    double scale = 1.0;
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) scale = std::max(scale, std::abs(E(i, k)));
    for (int i = 0; i < g; ++i)
        for (int k = i + 1; k < g; ++k)
            tn::require(std::abs(E(i, k) - E(k, i)) <= 1e-12 * scale,
                        tn::errc::invalid_argument, "direction must be symmetric");
    return E;
}

json scan_record(const tn::PeriodMatrix& tau, const CommonOpts& opts,
                 const std::optional<tn::Characteristic>& eta_char,
                 const std::optional<tn::CVec>& eta_z) {
    const tn::EvalConfig cfg = opts.eval_config();
    const tn::StratumClassification cls =
        tn::classify_stratum(tau, cfg, opts.vanish_tol, opts.rank_tol);
    json constants = json::array();
    for (const auto& [ch, v] : cls.constants)
        constants.push_back(json{{"char", tn::to_json(ch)}, {"abs", std::abs(v)}});
    json rec{{"tau", tn::to_json(tau)},
             {"constants", std::move(constants)},
             {"in_theta_null", cls.in_theta_null}};
    if (cls.min_h) rec["min_h"] = *cls.min_h;
    json vanishing = json::array();
    for (const auto& e : cls.vanishing) vanishing.push_back(tn::to_json(e.ch));
    rec["vanishing"] = std::move(vanishing);
    if (eta_char && eta_z) {
        const tn::EtaResult er = tn::eta(tau, *eta_z, *eta_char, cfg);
        rec["eta"] = json{{"re", er.eta.real()},
                          {"im", er.eta.imag()},
                          {"scale", er.scale},
                          {"on_divisor", er.on_divisor},
                          {"theta_abs", er.theta_abs}};
    }
    return rec;
}

int run(int argc, char** argv) {
    CLI::App app{"Riemann theta functions with characteristics: evaluation, theta-null "
                 "strata, Gauss-map ramification, and singularity-scheme Jacobians"};
    app.require_subcommand(1);

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a theta jet");
    CommonOpts eval_opts;
    std::string eval_input, eval_char = R"({"eps":[0],"delta":[0]})", eval_z;
    int eval_order = 0;
    add_common(eval_cmd, eval_opts);
    eval_cmd->add_option("--input", eval_input, "period matrix JSON file")->required();
    eval_cmd->add_option("--char", eval_char, "characteristic JSON");
    eval_cmd->add_option("--z", eval_z, "evaluation point JSON {re:[..], im:[..]}");
    eval_cmd->add_option("--order", eval_order, "derivative order (0..4)");

    // ---- classify ----
    auto* classify_cmd = app.add_subcommand("classify", "theta-null stratum classification");
    CommonOpts classify_opts;
    std::string classify_input;
    add_common(classify_cmd, classify_opts);
    classify_cmd->add_option("--input", classify_input, "period matrix JSON file")->required();

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    CommonOpts verify_opts;
    std::string suite;
    double suite_tol = 0.0;
    add_common(verify_cmd, verify_opts);
    verify_cmd->add_option("suite", suite, "heat|shift|factorization|jacobi|modular|eta-identity|parity|boundary")
        ->required();
    verify_cmd->add_option("--suite-tol", suite_tol,
                           "override the pinned suite tolerance (exploration only)");

    // ---- scan ----
    auto* scan_cmd = app.add_subcommand("scan", "line or grid scan with JSONL output");
    CommonOpts scan_opts;
    std::string scan_input, scan_mode = "line", scan_dir, scan_dir2, scan_char, scan_eta_z;
    double smin = -0.2, smax = 0.2, grid_width = 0.2;
    int grid_n = 3;
    add_common(scan_cmd, scan_opts);
    scan_cmd->add_option("--input", scan_input, "period matrix JSON file")->required();
    scan_cmd->add_option("--mode", scan_mode, "line|grid");
    scan_cmd->add_option("--direction", scan_dir, "symmetric direction matrix JSON");
    scan_cmd->add_option("--direction2", scan_dir2, "second direction (grid mode)");
    scan_cmd->add_option("--smin", smin, "line start");
    scan_cmd->add_option("--smax", smax, "line end");
    scan_cmd->add_option("--grid-n", grid_n, "grid points per axis");
    scan_cmd->add_option("--grid-width", grid_width, "grid half-width");
    scan_cmd->add_option("--char", scan_char, "characteristic for eta records");
    scan_cmd->add_option("--eta-z", scan_eta_z, "divisor point for eta records");

    // ---- sing ----
    auto* sing_cmd = app.add_subcommand("sing", "singularity-scheme Jacobians and ranks");
    CommonOpts sing_opts;
    std::string sing_input, sing_char, sing_z, sing_which = "both";
    double res_tol = 1e-8;
    add_common(sing_cmd, sing_opts);
    sing_cmd->add_option("--input", sing_input, "period matrix JSON file")->required();
    sing_cmd->add_option("--char", sing_char, "even characteristic JSON (half-period point)");
    sing_cmd->add_option("--z", sing_z, "explicit point JSON (S scheme only)");
    sing_cmd->add_option("--which", sing_which, "s|snull|both");
    sing_cmd->add_option("--res-tol", res_tol, "scheme-membership residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval_cmd) {
            tn::require(eval_order >= 0 && eval_order <= 4, tn::errc::invalid_argument,
                        "order must lie in [0,4]");
            const tn::PeriodMatrix tau = tn::period_from_json(tn::load_json_file(eval_input));
            const tn::Characteristic ch =
                tn::characteristic_from_json(parse_inline(eval_char, "--char"));
            tn::CVec z = tn::CVec::Zero(tau.genus());
            if (!eval_z.empty()) z = tn::cvec_from_json(parse_inline(eval_z, "--z"));
            const tn::ThetaJet jet =
                tn::eval_jet(tau, z, ch, eval_order, eval_opts.eval_config());
            json out{{"timestamp", iso_timestamp()},
                     {"command", "eval"},
                     {"config", eval_opts.config_json()},
                     {"jet", tn::to_json(jet)}};
            emit(eval_opts, out.dump(2) + "\n");
            return kExitOk;
        }

        if (*classify_cmd) {
            const tn::PeriodMatrix tau =
                tn::period_from_json(tn::load_json_file(classify_input));
            const tn::StratumClassification cls = tn::classify_stratum(
                tau, classify_opts.eval_config(), classify_opts.vanish_tol,
                classify_opts.rank_tol);
            json out{{"timestamp", iso_timestamp()},
                     {"command", "classify"},
                     {"config", classify_opts.config_json()},
                     {"classification", tn::to_json(cls)}};
            emit(classify_opts, out.dump(2) + "\n");
            return kExitOk;
        }

        if (*verify_cmd) {
            const tn::verify::SuiteReport rep = tn::verify::run_suite(
                suite, verify_opts.samples, verify_opts.seed, verify_opts.eval_config(),
                suite_tol);
            json cases = json::array();
            for (const auto& c : rep.cases)
                cases.push_back(json{{"label", c.label}, {"residual", c.residual},
                                     {"pass", c.pass}});
            json out{{"timestamp", iso_timestamp()},
                     {"command", "verify"},
                     {"config", verify_opts.config_json()},
                     {"suite", rep.suite},
                     {"seed", rep.seed},
                     {"samples", rep.samples},
                     {"tolerance", rep.tolerance},
                     {"max_residual", rep.max_residual},
                     {"pass", rep.pass},
                     {"cases", std::move(cases)}};
            emit(verify_opts, out.dump(2) + "\n");
            return rep.pass ? kExitOk : kExitVerifyFailed;
        }

        if (*scan_cmd) {
            const tn::PeriodMatrix tau0 =
                tn::period_from_json(tn::load_json_file(scan_input));
            const int g = tau0.genus();
            tn::require(scan_mode == "line" || scan_mode == "grid",
                        tn::errc::invalid_argument, "mode must be line or grid");
            tn::CMat E1 = scan_dir.empty()
                              ? tn::verify::symmetric_unit(g, 0, 0)
                              : direction_from_json(parse_inline(scan_dir, "--direction"), g);
            std::optional<tn::Characteristic> eta_ch;
            std::optional<tn::CVec> eta_z;
            tn::require(scan_char.empty() == scan_eta_z.empty(), tn::errc::invalid_argument,
                        "eta records need both --char and --eta-z");
            if (!scan_char.empty())
                eta_ch = tn::characteristic_from_json(parse_inline(scan_char, "--char"));
            if (!scan_eta_z.empty())
                eta_z = tn::cvec_from_json(parse_inline(scan_eta_z, "--eta-z"));

            std::ostringstream lines;
            int index = 0;
            bool failed = false;
            std::string failure;
            auto one_point = [&](json params, const tn::CMat& shift) {
                json rec;
                try {
                    const tn::PeriodMatrix tau = tn::PeriodMatrix::validate(tau0.tau + shift, 1e-9);
                    rec = scan_record(tau, scan_opts, eta_ch, eta_z);
                } catch (const tn::theta_error& e) {
                    rec = json{{"error", e.what()}};
                    failed = true;
                    failure = e.what();
                }
                rec["index"] = index++;
                rec["params"] = std::move(params);
                lines << rec.dump() << "\n";
                return !failed;
            };

            if (scan_mode == "line") {
                const int n = std::max(scan_opts.samples, 2);
                for (int i = 0; i < n; ++i) {
                    const double s = smin + (smax - smin) * i / (n - 1);
                    if (!one_point(json{{"s", s}}, s * E1)) break;
                }
            } else {
                tn::CMat E2 = scan_dir2.empty()
                                  ? tn::verify::symmetric_unit(g, g - 1, g - 1)
                                  : direction_from_json(parse_inline(scan_dir2, "--direction2"), g);
                bool stop = false;
                for (int i = 0; i < grid_n && !stop; ++i)
                    for (int j = 0; j < grid_n && !stop; ++j) {
                        const double s1 =
                            grid_n == 1 ? 0.0 : -grid_width + 2 * grid_width * i / (grid_n - 1);
                        const double s2 =
                            grid_n == 1 ? 0.0 : -grid_width + 2 * grid_width * j / (grid_n - 1);
                        if (!one_point(json{{"s1", s1}, {"s2", s2}}, s1 * E1 + s2 * E2))
                            stop = true;
                    }
            }
            emit(scan_opts, lines.str());  // partial output is flushed on failure
            if (failed) {
                std::cerr << "scan aborted: " << failure << "\n";
                return kExitNumerical;
            }
            return kExitOk;
        }

        if (*sing_cmd) {
            const tn::PeriodMatrix tau = tn::period_from_json(tn::load_json_file(sing_input));
            const tn::EvalConfig cfg = sing_opts.eval_config();
            tn::require(sing_which == "s" || sing_which == "snull" || sing_which == "both",
                        tn::errc::invalid_argument, "--which must be s, snull, or both");
            tn::require(!sing_char.empty() || !sing_z.empty(), tn::errc::invalid_argument,
                        "provide --char or --z");

            json out{{"timestamp", iso_timestamp()},
                     {"command", "sing"},
                     {"config", sing_opts.config_json()}};
            std::optional<tn::Characteristic> ch;
            tn::CVec z;
            if (!sing_char.empty()) {
                ch = tn::characteristic_from_json(parse_inline(sing_char, "--char"));
                z = tn::half_period(tau, *ch);
            } else {
                z = tn::cvec_from_json(parse_inline(sing_z, "--z"));
            }

            if ((sing_which == "snull" || sing_which == "both")) {
                tn::require(ch.has_value(), tn::errc::invalid_argument,
                            "snull needs --char");
                const tn::SchemeJacobian jac = tn::snull_jacobian(tau, *ch, cfg);
                const tn::RankReport rep = tn::numerical_rank(
                    jac.entries, sing_opts.rank_tol, 10.0 * jac.tail_bound);
                out["snull"] = json{{"jacobian", tn::to_json(jac)},
                                    {"rank", tn::to_json(rep)},
                                    {"full_rank", rep.numerical_rank == tau.genus() + 1}};
            }
            if (sing_which == "s" || sing_which == "both") {
                const tn::SchemeJacobian jac = tn::sing_S_jacobian(tau, z, cfg);
                if (jac.theta_residual > res_tol || jac.gradient_residual > res_tol) {
                    json err{{"error", "NotOnSingularityScheme"},
                             {"theta_residual", jac.theta_residual},
                             {"gradient_residual", jac.gradient_residual},
                             {"res_tol", res_tol}};
                    out["sing_s"] = err;
                    emit(sing_opts, out.dump(2) + "\n");
                    std::cerr << "point violates the scheme equations: |theta| = "
                              << jac.theta_residual << ", max|grad| = "
                              << jac.gradient_residual << "\n";
                    return kExitNumerical;
                }
                const auto [rep, in_sing] =
                    tn::sing_S_rank_test(tau, z, cfg, res_tol, sing_opts.rank_tol);
                out["sing_s"] = json{{"jacobian", tn::to_json(jac)},
                                     {"rank", tn::to_json(rep)},
                                     {"in_sing_s", in_sing}};
            }
            emit(sing_opts, out.dump(2) + "\n");
            return kExitOk;
        }
    } catch (const tn::theta_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == tn::errc::invalid_argument ? kExitUsage : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
