#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "insulab/ball_energy.hpp"
#include "insulab/eigen_disk.hpp"
#include "insulab/energy_stability.hpp"
#include "insulab/errors.hpp"
#include "insulab/fem2d.hpp"

namespace insulab::cli {

namespace {

constexpr double kFdTolerance = 0.05;        // analytic-vs-FD second derivative
constexpr double kEigenTolerance = 0.005;    // FEM lambda vs Bessel branch
constexpr double kUniformCvBound = 0.02;     // uniform-regime h variation

void echo_common(Report& rep, const RunConfig& cfg) {
    rep.add_config("n", static_cast<std::int64_t>(cfg.n));
    rep.add_config("R", cfg.R);
    std::string coeffs;
    for (std::size_t i = 0; i < cfg.f_coeffs.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", cfg.f_coeffs[i]);
        coeffs += (i ? "," : "") + std::string(buf);
    }
    rep.add_config("f", coeffs);
}

ball::RadialSource source_of(const RunConfig& cfg) {
    return ball::RadialSource{cfg.f_coeffs};
}

double required_m(const RunConfig& cfg) {
    if (!cfg.m_expr) throw validation_error("missing required --m");
    return resolve_m_expression(*cfg.m_expr, cfg.n, cfg.R);
}

void maybe_dump(const RunConfig& cfg, const fem::Mesh& mesh,
                const std::vector<double>& field) {
    if (cfg.dump_path.empty()) return;
    std::ofstream os(cfg.dump_path);
    if (!os) throw validation_error("cannot open dump path " + cfg.dump_path);
    fem::write_dump(os, mesh, field);
}

}  // namespace

Report cmd_energy_ball(const RunConfig& cfg) {
    const auto config = ball::BallConfig::make(cfg.n, cfg.R);
    const double m = required_m(cfg);
    const auto sol = ball::solve_radial(config, source_of(cfg), m);

    Report rep;
    rep.command = "energy-ball";
    echo_common(rep, cfg);
    rep.add_config("m", cfg.m_expr.value());
    rep.add("m_resolved", m);
    rep.add("mean_f", sol.mean_f);
    rep.add("u_R", sol.u_R);
    rep.add("ur_R", sol.ur_R);
    rep.add("urr_R", sol.urr_R);
    rep.add("energy", ball::energy_value(sol));
    rep.add("h_constant", ball::optimal_distribution(sol));
    return rep;
}

Report cmd_stability(const RunConfig& cfg) {
    const auto config = ball::BallConfig::make(cfg.n, cfg.R);
    const double m = required_m(cfg);
    const int smax = cfg.smax.value_or(0);
    if (smax < 1) throw validation_error("stability: --smax must be >= 1");
    const auto f = source_of(cfg);
    const auto verdict = stability::classify(config, f, m);
    const auto sol = ball::solve_radial(config, f, m);

    Report rep;
    rep.command = "stability";
    echo_common(rep, cfg);
    rep.add_config("m", cfg.m_expr.value());
    rep.add_config("smax", static_cast<std::int64_t>(smax));
    rep.add("m_resolved", m);
    rep.add("case", std::string(stability::to_string(verdict.case_label)));
    rep.add("criterion_value", verdict.criterion_value);
    rep.add("stable", verdict.stable);
    if (verdict.m1) rep.add("m1", *verdict.m1);
    if (smax >= 2) rep.add("worst_mode",
                           static_cast<std::int64_t>(stability::worst_mode(sol, smax)));

    Table modes;
    modes.name = "modes";
    modes.columns = {"s", "q_value", "linearized", "gradient", "source", "nonlocal"};
    for (int s = 1; s <= smax; ++s) {
        const auto mf = stability::mode_form(sol, s);
        modes.rows.push_back({static_cast<std::int64_t>(s), mf.q_value, mf.linearized,
                              mf.gradient, mf.source, mf.nonlocal});
    }
    rep.tables.push_back(std::move(modes));
    return rep;
}

Report cmd_eigen(const RunConfig& cfg) {
    const auto config = ball::BallConfig::make(cfg.n, cfg.R);
    const double mu2 = eigen::neumann_mu2(config);
    const double m0 = eigen::m0_threshold(config);
    const int smax = cfg.smax.value_or(0);
    if (cfg.fs_tables && cfg.n != 2)
        throw unsupported_dimension_error(
            "eigen: the f_s/mode tables are defined for n = 2 only");
    if (cfg.fs_tables && smax < 1)
        throw validation_error("eigen: --fs requires --smax >= 1");

    Report rep;
    rep.command = "eigen";
    echo_common(rep, cfg);
    if (cfg.m_grid_expr) rep.add_config("m_grid", *cfg.m_grid_expr);
    if (cfg.m_expr) rep.add_config("m", *cfg.m_expr);
    rep.add("mu2", mu2);
    rep.add("m0", m0);
    rep.add("m0_mu2", m0 * mu2);
    rep.add("isoperimetric_rhs", (cfg.n - 1.0) / cfg.n * config.perimeter *
                                     config.perimeter / config.volume);
    rep.add("identity_residual", eigen::radial_residual(config, m0, mu2));

    std::vector<double> grid;
    if (cfg.m_grid_expr)
        grid = resolve_m_grid(*cfg.m_grid_expr, cfg.n, cfg.R);
    else if (cfg.m_expr)
        grid = {resolve_m_expression(*cfg.m_expr, cfg.n, cfg.R)};
    if (grid.empty()) return rep;

    const auto rows = eigen::mlambda_scan(config, grid);
    if (cfg.fs_tables) {
        Table t;
        t.name = "modes";
        t.columns = {"m", "lambda", "m_lambda", "s", "f_s", "q_value"};
        for (const auto& row : rows) {
            for (int s = 1; s <= smax; ++s) {
                const auto mf = eigen::eigen_mode_form(config, row.m, s);
                t.rows.push_back({row.m, row.lambda, row.m_lambda,
                                  static_cast<std::int64_t>(s), mf.f_s, mf.q_value});
            }
        }
        rep.tables.push_back(std::move(t));
    } else {
        Table t;
        t.name = "lambda";
        t.columns = {"m", "lambda", "m_lambda"};
        for (const auto& row : rows)
            t.rows.push_back({row.m, row.lambda, row.m_lambda});
        rep.tables.push_back(std::move(t));
    }
    return rep;
}

Report cmd_fem_verify(const RunConfig& cfg) {
    if (cfg.n != 2)
        throw validation_error("fem-verify: the FEM oracle is two-dimensional");
    const std::string problem = cfg.problem.value_or("");
    if (problem != "energy" && problem != "eigen")
        throw validation_error("fem-verify: --problem must be energy or eigen");
    const int n_r = cfg.n_r.value_or(48);
    const int n_theta = cfg.n_theta.value_or(192);

    Report rep;
    rep.command = "fem-verify";
    echo_common(rep, cfg);
    rep.add_config("problem", problem);
    rep.add_config("nr", static_cast<std::int64_t>(n_r));
    rep.add_config("ntheta", static_cast<std::int64_t>(n_theta));

    if (problem == "energy") {
        const double m = required_m(cfg);
        const int s = cfg.s.value_or(2);
        const double a = cfg.a.value_or(1.0);
        const double dt = cfg.dt.value_or(0.02);
        rep.add_config("s", static_cast<std::int64_t>(s));
        rep.add_config("a", a);
        rep.add_config("dt", dt);

        const auto f = source_of(cfg);
        const auto d =
            fem::energy_derivatives(cfg.R, f, m, s, a, dt, n_r, n_theta);
        const auto ball_sol =
            ball::solve_radial(ball::BallConfig::make(2, cfg.R), f, m);
        const double q_analytic = stability::mode_form(ball_sol, s).q_value;
        const double scale = std::numbers::pi * cfg.R * cfg.R * cfg.R * a * a;
        const double d2n = d.d2 / scale;
        const double q_ref = std::max(
            std::abs(q_analytic),
            std::abs(stability::mode_form(ball_sol, 2).q_value));
        const double rel = std::abs(d2n - q_analytic) / q_ref;

        rep.add("m_resolved", m);
        rep.add("e_minus", d.e_minus);
        rep.add("e_zero", d.e_zero);
        rep.add("e_plus", d.e_plus);
        rep.add("d1", d.d1);
        rep.add("d2", d.d2);
        rep.add("d2_per_unit_zeta", d2n);
        rep.add("q_analytic", q_analytic);
        rep.add("rel_diff", rel);
        rep.add("within_tolerance", rel <= kFdTolerance);

        if (!cfg.dump_path.empty()) {
            const auto sys = fem::build_system(
                fem::PerturbedDisk::make(cfg.R, s, a, 0.0), f, n_r, n_theta);
            maybe_dump(cfg, sys.mesh, fem::solve_energy(sys, m).field);
        }
        return rep;
    }

    // problem == "eigen": solve on the unperturbed disk and compare against
    // the Bessel branch (m > m0) or report the symmetry-broken measurements.
    const double m = required_m(cfg);
    const auto config = ball::BallConfig::make(2, cfg.R);
    const double m0 = eigen::m0_threshold(config);
    const double mu2 = eigen::neumann_mu2(config);
    ball::RadialSource unit{{1.0}};
    const auto sys = fem::build_system(fem::PerturbedDisk::make(cfg.R, 1, 0.0, 0.0),
                                       unit, n_r, n_theta);
    const auto sol = fem::solve_eigen(sys, m);

    std::vector<double> trace(sys.mesh.boundary.size());
    std::vector<double> weights(sys.mesh.boundary.size());
    double tr_min = std::numeric_limits<double>::infinity(), tr_max = -tr_min;
    for (std::size_t j = 0; j < trace.size(); ++j) {
        trace[j] = sol.field[sys.mesh.boundary[j]];
        weights[j] = sys.boundary_vector[sys.mesh.boundary[j]];
        tr_min = std::min(tr_min, trace[j]);
        tr_max = std::max(tr_max, trace[j]);
    }
    const auto h = ball::distribution_from_trace(trace, weights, m);
    double wsum = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
        wsum += weights[j];
        mean += weights[j] * h[j];
    }
    mean /= wsum;
    double var = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j)
        var += weights[j] * (h[j] - mean) * (h[j] - mean);
    const double cv = std::sqrt(var / wsum) / mean;

    rep.add("m_resolved", m);
    rep.add("m0", m0);
    rep.add("mu2", mu2);
    rep.add("lambda", sol.lambda);
    rep.add("mu2_discrete", sol.mu2_discrete);
    if (m > m0) {
        const double lambda_ref = eigen::lambda_m(config, m).lambda;
        rep.add("lambda_bessel", lambda_ref);
        rep.add("rel_diff", std::abs(sol.lambda - lambda_ref) / lambda_ref);
        rep.add("within_tolerance",
                std::abs(sol.lambda - lambda_ref) / lambda_ref <= kEigenTolerance);
    } else {
        rep.add("lambda_over_mu2", sol.lambda / mu2);
    }
    rep.add("h_cv", cv);
    rep.add("h_uniform", cv <= kUniformCvBound);
    rep.add("one_signed_trace", tr_min * tr_max > 0.0);
    rep.add("trace_min", tr_min);
    rep.add("trace_max", tr_max);
    rep.add("sign_loop_converged", sol.sign_loop_converged);
    rep.add("winner", std::string(sol.winner == fem::EigenCandidate::kContactArc
                                      ? "contact-arc"
                                      : "sign-iteration"));
    maybe_dump(cfg, sys.mesh, sol.field);
    return rep;
}

Report dispatch(const RunConfig& cfg) {
    if (cfg.command == "energy-ball") return cmd_energy_ball(cfg);
    if (cfg.command == "stability") return cmd_stability(cfg);
    if (cfg.command == "eigen") return cmd_eigen(cfg);
    if (cfg.command == "fem-verify") return cmd_fem_verify(cfg);
    throw validation_error("unknown command " + cfg.command);
}

void emit(const Report& report, const RunConfig& cfg) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path, std::ios::binary);
        if (!file) throw validation_error("cannot open output path " + cfg.out_path);
        os = &file;
    }
    if (cfg.format == "json")
        write_json(*os, report);
    else if (cfg.format == "csv")
        write_csv(*os, report);
    else
        throw validation_error("format must be json or csv");
}

}  // namespace insulab::cli
