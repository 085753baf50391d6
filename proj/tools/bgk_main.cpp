// Command-line surface for the linearized BGK spectrum library: per-k
// spectrum queries, branch sweeps, critical wave numbers, argument-plot
// grids, and the validation suite.
//
// Exit codes: 0 ok, 1 usage, 2 internal inconsistency, 3 solver failure,
// 4 validation failure.

#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bgk/errors.hpp"
#include "bgk/io_formats.hpp"
#include "bgk/mode_tracer.hpp"
#include "bgk/validation.hpp"

namespace {

struct RunConfig {
    double tau = 1.0;
    double k = 1.0;
    double kMax = 1.5;
    double tol = 1e-12;
    std::string modes = "shear,diffusion,acoustic,acoustic_conj";
    bgk::ArgGrid grid{-1.2, 0.2, -2.0, 2.0, 400, 400};
    bool gridSet = false;
    bool gammaOnly = false;
    std::string out;
    std::string format = "both";  // csv, pgm, both (argplot)
    std::string level = "quick";
    std::optional<int> mutateCoeff;
    double mutateRel = 1e-3;
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw bgk::domain_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
    if (j.contains("k")) cfg.k = j["k"].get<double>();
    if (j.contains("k_max")) cfg.kMax = j["k_max"].get<double>();
    if (j.contains("modes")) cfg.modes = j["modes"].get<std::string>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("level")) cfg.level = j["level"].get<std::string>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("gamma_only")) cfg.gammaOnly = j["gamma_only"].get<bool>();
    if (j.contains("grid")) {
        auto& g = j["grid"];
        cfg.grid.reMin = g.value("re_min", cfg.grid.reMin);
        cfg.grid.reMax = g.value("re_max", cfg.grid.reMax);
        cfg.grid.imMin = g.value("im_min", cfg.grid.imMin);
        cfg.grid.imMax = g.value("im_max", cfg.grid.imMax);
        cfg.grid.nx = g.value("nx", cfg.grid.nx);
        cfg.grid.ny = g.value("ny", cfg.grid.ny);
        cfg.gridSet = true;
    }
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text << "\n";
    else
        bgk::write_file(out, text);
}

int cmd_spectrum(const RunConfig& cfg) {
    bgk::SpectrumResult r = bgk::spectrum_at(bgk::SpectralParams(cfg.tau, cfg.k));
    emit(cfg.out, bgk::spectrum_json(r));
    return 0;
}

int cmd_trace(const RunConfig& cfg) {
    std::vector<std::string> tokens;
    std::stringstream ss(cfg.modes);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) tokens.push_back(tok);
    auto want = [&](const char* name) {
        for (const std::string& t : tokens)
            if (t == name) return true;
        return false;
    };
    std::vector<bgk::ModeBranch> branches;
    bgk::SpectralParams seed(cfg.tau, 0.01 / cfg.tau);
    bgk::TraceControl ctrl;
    ctrl.tol = cfg.tol;
    if (want("shear"))
        branches.push_back(bgk::trace_branch(bgk::ModeKind::Shear, seed, cfg.kMax, ctrl));
    if (want("diffusion"))
        branches.push_back(bgk::trace_branch(bgk::ModeKind::Diffusion, seed, cfg.kMax, ctrl));
    if (want("acoustic"))
        branches.push_back(bgk::trace_branch(bgk::ModeKind::Acoustic, seed, cfg.kMax, ctrl));
    if (want("acoustic_conj"))
        branches.push_back(bgk::trace_branch(bgk::ModeKind::AcousticConjugate, seed, cfg.kMax, ctrl));
    if (branches.empty()) throw bgk::domain_error("trace: no recognized mode names in --modes");
    emit(cfg.out, bgk::trace_csv(branches));
    return 0;
}

int cmd_crit(const RunConfig& cfg) {
    emit(cfg.out, bgk::crit_json(cfg.tau));
    return 0;
}

int cmd_argplot(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (!c.gridSet) {
        // default window: contains the strip and the essential line
        c.grid.reMin = -1.2 / c.tau;
        c.grid.reMax = 0.2 / c.tau;
        c.grid.imMin = -2.0 * c.k;
        c.grid.imMax = 2.0 * c.k;
    }
    bgk::SpectralParams p(c.tau, c.k);
    std::vector<double> vals = bgk::argplot_values(p, c.grid, c.gammaOnly);
    std::string base = c.out.empty() ? std::string("argplot") : c.out;
    if (c.format == "pgm" || c.format == "both")
        bgk::write_file(base + ".pgm", bgk::pgm_bytes(vals, c.grid.nx, c.grid.ny));
    if (c.format == "csv" || c.format == "both")
        bgk::write_file(base + ".csv", bgk::argplot_csv(c.grid, vals));
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    bgk::ValidationOptions opt;
    opt.level = (cfg.level == "full") ? bgk::ValidationLevel::Full : bgk::ValidationLevel::Quick;
    opt.mutateCoeff = cfg.mutateCoeff;
    opt.mutateRel = cfg.mutateRel;
    bgk::ValidationReport rep = bgk::run_validation(opt);
    emit(cfg.out, rep.json());
    for (const bgk::CheckResult& c : rep.checks)
        std::cerr << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  (" << c.detail << ")\n";
    return rep.allPassed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrum of the linearized BGK operator: eigenvalue branches, "
                 "critical wave numbers, argument plots, validation"};
    app.require_subcommand(1);
    app.fallthrough();  // --config may follow the subcommand

    RunConfig cfg;
    std::string configPath;
    app.add_option("--config", configPath, "JSON config file mirroring the CLI options");

    auto* spectrum = app.add_subcommand("spectrum", "discrete spectrum at one (tau, k)");
    spectrum->add_option("--tau", cfg.tau, "relaxation time")->check(CLI::PositiveNumber);
    spectrum->add_option("--k", cfg.k, "wave number")->check(CLI::NonNegativeNumber);
    spectrum->add_option("--out", cfg.out, "output path (stdout when omitted)");

    auto* trace = app.add_subcommand("trace", "branch continuation up to k-max");
    trace->add_option("--tau", cfg.tau)->check(CLI::PositiveNumber);
    trace->add_option("--kmax", cfg.kMax)->check(CLI::PositiveNumber);
    trace->add_option("--modes", cfg.modes, "comma list: shear,diffusion,acoustic,acoustic_conj");
    trace->add_option("--tol", cfg.tol, "corrector tolerance")->check(CLI::Range(1e-14, 1e-6));
    trace->add_option("--out", cfg.out);

    auto* crit = app.add_subcommand("crit", "critical wave numbers");
    crit->add_option("--tau", cfg.tau)->check(CLI::PositiveNumber);
    crit->add_option("--out", cfg.out);

    auto* argplot = app.add_subcommand("argplot", "argument plot of the determinant");
    argplot->add_option("--tau", cfg.tau)->check(CLI::PositiveNumber);
    argplot->add_option("--k", cfg.k)->check(CLI::PositiveNumber);
    auto* remin = argplot->add_option("--re-min", cfg.grid.reMin);
    argplot->add_option("--re-max", cfg.grid.reMax);
    argplot->add_option("--im-min", cfg.grid.imMin);
    argplot->add_option("--im-max", cfg.grid.imMax);
    argplot->add_option("--nx", cfg.grid.nx)->check(CLI::Range(1, 8192));
    argplot->add_option("--ny", cfg.grid.ny)->check(CLI::Range(1, 8192));
    argplot->add_flag("--gamma-only", cfg.gammaOnly, "plot Gamma without the shear factor");
    argplot->add_option("--out", cfg.out, "output base name (.pgm/.csv appended)");
    argplot->add_option("--format", cfg.format)->check(CLI::IsMember({"pgm", "csv", "both"}));

    auto* validate = app.add_subcommand("validate", "run the invariant suites");
    validate->add_option("--level", cfg.level)->check(CLI::IsMember({"quick", "full"}));
    validate->add_option("--out", cfg.out);
    int mutateIdx = -1;
    validate->add_option("--mutate-coeff", mutateIdx,
                         "perturb one Gamma coefficient (fault-injection test)");
    validate->add_option("--mutate-rel", cfg.mutateRel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!configPath.empty()) apply_config_file(configPath, cfg);
        if (mutateIdx >= 0) cfg.mutateCoeff = mutateIdx;
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (trace->parsed()) return cmd_trace(cfg);
        if (crit->parsed()) return cmd_crit(cfg);
        if (argplot->parsed()) {
            cfg.gridSet = remin->count() > 0 || cfg.gridSet;
            return cmd_argplot(cfg);
        }
        if (validate->parsed()) return cmd_validate(cfg);
    } catch (const bgk::internal_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const bgk::convergence_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const bgk::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
