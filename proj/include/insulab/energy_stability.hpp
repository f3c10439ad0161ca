#pragma once

// Second variation of the energy functional at the ball: per-mode forms Q_s,
// the necessary-and-sufficient stability criterion on the source, the
// three-case classification with the threshold amount m1, the worst-mode
// property, and the Steklov trace inequality check.

#include <cstdint>
#include <optional>
#include <vector>

#include "insulab/ball_energy.hpp"

namespace insulab::stability {

// Per-spherical-harmonic-mode second variation, normalized to unit L2 norm of
// the boundary speed: Q_s = d^2/dt^2 E_m per unit int_{boundary} zeta^2.
struct ModeForm {
    int s = 0;
    double q_value = 0.0;
    // The four summands of Q_s.
    double linearized = 0.0;  // -(R/s) u_rr(R)^2, from the linearized field
    double gradient = 0.0;    // u_rr(R) u_r(R)
    double source = 0.0;      // -f'(R) u(R)
    double nonlocal = 0.0;    // (P u(R)^2/m) (s(s+n-2)-(n-1))/R^2
};

enum class CaseLabel {
    kNondecreasingUnstable,  // f nondecreasing, nonconstant: unstable for all m
    kNonincreasingStable,    // f nonincreasing with f(R) >= (n-1)/n f-bar
    kThreshold,              // f'(R) < 0 and f(R) < (n-1)/n f-bar: flips at m1
    kUnclassified,           // outside the three theorem hypotheses
};

const char* to_string(CaseLabel label);

struct StabilityVerdict {
    CaseLabel case_label = CaseLabel::kUnclassified;
    double criterion_value = 0.0;  // LHS of the stability criterion
    bool stable = false;           // criterion_value <= 0
    std::optional<double> m1;      // present iff case_label == kThreshold
};

// Q_s for mode s >= 1 (s = 0 is excluded by volume preservation).
ModeForm mode_form(const ball::EnergyBallSolution& bd, int s);

// Evaluates the criterion
//   (f(R) - (n-1)/n f-bar)(f(R) - f-bar) + f'(R) f-bar m / (n^2 omega_n R^{n-1})
// and labels the source per the classification theorem.
StabilityVerdict classify(const ball::BallConfig& config,
                          const ball::RadialSource& f, double m);

// Threshold amount for the sign flip in the criterion; present only when
// f'(R) < 0 and f(R) < (n-1)/n f-bar. Self-verifies the flip at 0.9/1.1 m1.
std::optional<double> threshold_m1(const ball::BallConfig& config,
                                   const ball::RadialSource& f);

// argmin over s in {1..s_max} of Q_s; the translation mode s = 1 must win on
// every valid input -- a different result throws verification_error.
int worst_mode(const ball::EnergyBallSolution& bd, int s_max);

struct SteklovReport {
    int trials = 0;
    double max_identity_residual = 0.0;  // per-mode int v^2 = (R/s) int |grad v|^2
    double min_inequality_margin = 0.0;  // R int|grad v|^2 - int v^2, over trials
    bool inequality_holds = true;
    double pure_s1_residual = 0.0;  // equality case
};

// Random zero-boundary-mean harmonic fields built from modes r^s Y_s verify
// the trace inequality int v^2 <= R int |grad v|^2, with the gradient side
// integrated by radial quadrature.
SteklovReport steklov_inequality_check(const ball::BallConfig& config, int trials,
                                       std::uint64_t seed = 0x5eed1234u);

// Integrals of the unit-coefficient mode v_s = r^s Y_s: (boundary int v^2,
// volume int |grad v|^2). The gradient side is computed by radial quadrature,
// so the (R/s) identity between the two is a nontrivial check.
std::pair<double, double> steklov_mode_integrals(const ball::BallConfig& config,
                                                 int s);

}  // namespace insulab::stability
