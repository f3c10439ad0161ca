#pragma once

// The eigenvalue problem on the ball through its Fourier-Bessel transcendental
// equations: the first nonzero Neumann eigenvalue mu2(B_R), the radial branch
// lambda_m for m > m0, the threshold m0 with its isoperimetric identity, the
// 2D per-mode factors f_s and mode forms of the eigenvalue second variation,
// and the Bessel ratio monotonicity check.

#include <vector>

#include "insulab/ball_energy.hpp"

namespace insulab::eigen {

using ball::BallConfig;

// Radial eigen solution on B_R for m > m0, normalized with int u^2 = 1.
struct EigenBallSolution {
    BallConfig config;
    double m = 0.0;
    double lambda = 0.0;
    double mu2 = 0.0;       // first nonzero Neumann eigenvalue of B_R
    double residual = 0.0;  // transcendental equation residual at lambda
    double u_R = 0.0;
    double ur_R = 0.0;
    double urr_R = 0.0;
};

// Per-Fourier-mode data of the 2D eigenvalue second variation, for the
// convention zeta(theta) = sum_s (c_s cos s theta + d_s sin s theta);
// q_value is the coefficient of (c_s^2 + d_s^2) in lambda''(0)/2.
struct EigenModeForm {
    int s = 0;
    double f_s = 0.0;
    double q_value = 0.0;
};

struct MLambdaRow {
    double m = 0.0;
    double lambda = 0.0;
    double m_lambda = 0.0;
};

struct LandauReport {
    bool decreasing_in_s = true;   // s -> J_s(t)/(t J_s'(t)) strictly decreasing
    bool ratio_increasing = true;  // s -> J_s(t)/J_{s+1}(t) strictly increasing
    double min_decrement = 0.0;    // smallest consecutive decrement observed
};

// Transcendental residual of the radial branch at (m, lambda):
//   -sqrt(l) R^{1-n/2} J_{n/2}(sqrt(l) R) + (P/m) R^{1-n/2} J_{n/2-1}(sqrt(l) R).
double radial_residual(const BallConfig& config, double m, double lambda);

// mu2(B_R) = (z*/R)^2 with z* the first positive root of
// z J'_{n/2}(z) - (n-2)/2 J_{n/2}(z).
double neumann_mu2(const BallConfig& config);

// m0 from the identity m0 mu2 = (n-1)/n P^2/|B|, then verified against the
// radial transcendental equation at (lambda = mu2, m = m0).
double m0_threshold(const BallConfig& config);

// Radial branch lambda_m in (0, mu2); requires m > m0 (regime_error otherwise,
// the nonsmooth regime belongs to the FEM sign-iteration path).
EigenBallSolution lambda_m(const BallConfig& config, double m);

// f_s of the 2D second variation; n = 2 only. f_1 vanishes identically on the
// radial branch, f_s < 0 for s >= 2 when m > m0.
double fs_factor(const BallConfig& config, double m, int s);

// Per-mode contribution to lambda''(0)/2; n = 2 only, nonnegative for m > m0.
EigenModeForm eigen_mode_form(const BallConfig& config, double m, int s);

// lambda_m sweep; verifies m lambda_m strictly increasing along the grid.
std::vector<MLambdaRow> mlambda_scan(const BallConfig& config,
                                     const std::vector<double>& m_grid);

// Bessel ratio monotonicity on t in (0, j'_{1,1}) across real orders s >= 1.
LandauReport landau_check(const std::vector<double>& t_grid,
                          const std::vector<double>& s_grid);

}  // namespace insulab::eigen
