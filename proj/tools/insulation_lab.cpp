// insulation-lab: reproducible experiments for the two thermal-insulation
// shape functionals on balls and perturbed disks.

#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "insulab/errors.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void add_common(CLI::App* sub, insulab::cli::RunConfig& cfg) {
    sub->add_option("--n", cfg.n, "space dimension")->check(CLI::Range(2, 16));
    sub->add_option("--R", cfg.R, "ball radius");
    sub->add_option("--f", cfg.f_coeffs,
                    "radial source polynomial coefficients c0,c1,...")
        ->delimiter(',');
    sub->add_option("--format", cfg.format, "output format: json or csv");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal-insulation shape optimization toolkit"};
    app.require_subcommand(1);

    insulab::cli::RunConfig cfg;
    std::string m_expr, m_grid_expr;

    auto* energy = app.add_subcommand("energy-ball",
                                      "radial energy solve on the ball");
    add_common(energy, cfg);
    energy->add_option("--m", m_expr, "material amount (supports m0 token)")
        ->required();

    auto* stab = app.add_subcommand("stability",
                                    "energy second-variation classification");
    add_common(stab, cfg);
    stab->add_option("--m", m_expr, "material amount")->required();
    int smax = 0;
    stab->add_option("--smax", smax, "largest spherical-harmonic mode")->required();

    auto* eig = app.add_subcommand("eigen", "eigenvalue problem on the ball");
    add_common(eig, cfg);
    eig->add_option("--m", m_expr, "single material amount");
    eig->add_option("--m-grid", m_grid_expr, "grid: {log|lin}:LO:HI:N or list");
    eig->add_option("--smax", smax, "mode table upper order");
    bool fs_tables = false;
    eig->add_flag("--fs", fs_tables, "emit f_s and mode-form tables (n = 2)");

    auto* fem = app.add_subcommand("fem-verify",
                                   "finite-element cross checks on perturbed disks");
    add_common(fem, cfg);
    std::string problem;
    fem->add_option("--problem", problem, "energy or eigen")->required();
    fem->add_option("--m", m_expr, "material amount")->required();
    int mode_s = 2, n_r = 48, n_theta = 192;
    double amp = 1.0, dt = 0.02;
    fem->add_option("--s", mode_s, "perturbation mode");
    fem->add_option("--a", amp, "perturbation amplitude");
    fem->add_option("--dt", dt, "finite-difference step");
    fem->add_option("--nr", n_r, "radial mesh layers");
    fem->add_option("--ntheta", n_theta, "angular mesh divisions");
    std::string dump;
    fem->add_option("--dump", dump, "write mesh/field dump to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!m_expr.empty()) cfg.m_expr = m_expr;
        if (!m_grid_expr.empty()) cfg.m_grid_expr = m_grid_expr;
        if (energy->parsed()) cfg.command = "energy-ball";
        if (stab->parsed()) {
            cfg.command = "stability";
            cfg.smax = smax;
        }
        if (eig->parsed()) {
            cfg.command = "eigen";
            if (eig->count("--smax")) cfg.smax = smax;
            cfg.fs_tables = fs_tables;
        }
        if (fem->parsed()) {
            cfg.command = "fem-verify";
            cfg.problem = problem;
            cfg.s = mode_s;
            cfg.a = amp;
            cfg.dt = dt;
            cfg.n_r = n_r;
            cfg.n_theta = n_theta;
            cfg.dump_path = dump;
        }
        const auto report = insulab::cli::dispatch(cfg);
        insulab::cli::emit(report, cfg);
        return 0;
    } catch (const insulab::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const insulab::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const insulab::unsupported_dimension_error& e) {
        std::cerr << "unsupported dimension: " << e.what() << "\n";
        return kExitUsage;
    } catch (const insulab::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
