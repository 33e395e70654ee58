// Command-line front end: inertia / ctilde / homogenize / classify / sweep /
// verify over JSON job configs. Exit codes: 0 ok, 1 config error, 2 model
// error, 3 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sgehom/report.hpp"
#include "sgehom/sweep.hpp"
#include "sgehom/verify.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string output_path;
    std::string format = "json";
    bool erratum_sign_3d = false;
    bool has_seed = false;
    std::uint64_t seed = 0;
    double tol_dilute = -1.0;
    double tol_classify = -1.0;
    double tol_fit = -1.0;
};

void add_common(CLI::App *cmd, CommonArgs &args, bool needs_config = true) {
    auto *opt = cmd->add_option("--config", args.config_path, "job configuration (JSON)");
    if (needs_config) opt->required();
    cmd->add_option("--output", args.output_path, "write the result here instead of stdout");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--erratum-sign-3d", args.erratum_sign_3d,
                  "flip the sign of the spherical-inclusion bracket");
    cmd->add_option("--seed", args.seed, "seed for the built-in verification draws")
        ->each([&args](const std::string &) { args.has_seed = true; });
    cmd->add_option("--tol-dilute-threshold", args.tol_dilute,
                    "volume fraction above which a warning is emitted (default 0.1)");
    cmd->add_option("--tol-classify", args.tol_classify,
                    "relative tolerance of the symmetry probes (default 1e-9)");
    cmd->add_option("--tol-fit", args.tol_fit,
                    "relative residual certifying the structural fit (default 1e-10)");
}

sgehom::JobConfig load_config(const CommonArgs &args) {
    sgehom::JobConfig cfg = sgehom::parse_config(args.config_path);
    if (args.erratum_sign_3d) cfg.erratum_sign_3d = true;
    if (args.has_seed) cfg.seed = args.seed;
    if (args.tol_dilute >= 0.0) cfg.tol.dilute_threshold = args.tol_dilute;
    if (args.tol_classify >= 0.0) cfg.tol.classify = args.tol_classify;
    if (args.tol_fit >= 0.0) cfg.tol.fit_certify = args.tol_fit;
    return cfg;
}

void emit(const std::string &text, const CommonArgs &args) {
    if (args.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.output_path);
    if (!out) throw sgehom::ModelError("cannot open output file: " + args.output_path);
    out << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Effective nonlocal response of dilute two-phase composites"};
    app.require_subcommand(1);

    CommonArgs inertia_args, ctilde_args, homog_args, classify_args, sweep_args, verify_args;
    bool inject_perturbation = false;

    auto *cmd_inertia =
        app.add_subcommand("inertia", "static moments, Euler tensors and normalized inertia");
    add_common(cmd_inertia, inertia_args);
    auto *cmd_ctilde =
        app.add_subcommand("ctilde", "first-order discrepancy parameters and definiteness");
    add_common(cmd_ctilde, ctilde_args);
    auto *cmd_homog =
        app.add_subcommand("homogenize", "full nonlocal homogenization report");
    add_common(cmd_homog, homog_args);
    auto *cmd_classify = app.add_subcommand("classify", "symmetry classes of the response");
    add_common(cmd_classify, classify_args);
    auto *cmd_sweep =
        app.add_subcommand("sweep", "aspect-ratio/Poisson sweep of the elliptical-hole constants");
    add_common(cmd_sweep, sweep_args);
    auto *cmd_verify = app.add_subcommand("verify", "built-in numerical self-verification");
    add_common(cmd_verify, verify_args, false);
    cmd_verify->add_flag("--inject-perturbation", inject_perturbation,
                         "test hook: perturb an assembled tensor so the check must fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (cmd_inertia->parsed()) {
            emit(sgehom::run_inertia(load_config(inertia_args)).dump(2) + "\n", inertia_args);
        } else if (cmd_ctilde->parsed()) {
            emit(sgehom::run_ctilde(load_config(ctilde_args)).dump(2) + "\n", ctilde_args);
        } else if (cmd_classify->parsed()) {
            emit(sgehom::run_classify(load_config(classify_args)).dump(2) + "\n", classify_args);
        } else if (cmd_homog->parsed()) {
            sgehom::ReportDocument rep = sgehom::run_homogenize(load_config(homog_args));
            if (homog_args.format == "csv")
                emit(sgehom::condensed_csv(rep.result.aeq), homog_args);
            else
                emit(rep.doc.dump(2) + "\n", homog_args);
        } else if (cmd_sweep->parsed()) {
            sgehom::SweepSpec spec = sgehom::parse_sweep_config(sweep_args.config_path);
            auto rows = sgehom::run_sweep(spec);
            std::ostringstream os;
            sgehom::write_sweep_csv(rows, os);
            emit(os.str(), sweep_args);
        } else if (cmd_verify->parsed()) {
            sgehom::VerifyOptions opts;
            if (verify_args.has_seed) opts.seed = verify_args.seed;
            opts.inject_aeq_perturbation = inject_perturbation;
            if (!verify_args.config_path.empty())
                opts.config = sgehom::parse_config(verify_args.config_path);
            sgehom::VerifyReport report = sgehom::run_verify(opts);
            std::ostringstream os;
            sgehom::print_verify(report, os);
            emit(os.str(), verify_args);
            if (!report.all_passed) return 3;
        }
    } catch (const sgehom::ConfigError &e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const sgehom::ModelError &e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
