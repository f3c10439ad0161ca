#pragma once

// Radial solve of the insulated-energy problem on the ball B_R:
//   -Delta u = f in B_R,   du/dnu = -(1/m) int_{boundary} u   on the boundary,
// for a polynomial radial source f >= 0. Produces the boundary data
// (u(R), u_r(R), u_rr(R)), the energy value, the sampled radial profile, and
// the optimal insulation distribution.

#include <span>
#include <vector>

namespace insulab::ball {

// Ball geometry: dimension n >= 2 and radius R > 0, with the derived
// unit-ball volume omega_n, perimeter and volume.
struct BallConfig {
    int n = 2;
    double radius = 1.0;
    double omega_n = 0.0;
    double perimeter = 0.0;
    double volume = 0.0;

    static BallConfig make(int n, double radius);
};

// Radial source f(r) = sum_k c_k r^k with degree <= 12. Nonnegativity is
// validated on a 1001-point uniform grid of [0, R].
struct RadialSource {
    std::vector<double> coeffs;

    double operator()(double r) const;
    double derivative(double r) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    // Throws validation_error when f dips below 0 on the grid (the offending
    // grid point is named), or when require_nonzero and f vanishes identically.
    void validate(double radius, bool require_nonzero) const;
};

struct EnergyBallSolution {
    BallConfig config;
    RadialSource source;
    double m = 0.0;
    double mean_f = 0.0;  // average of f over B_R
    double u_R = 0.0;
    double ur_R = 0.0;
    double urr_R = 0.0;
    double energy = 0.0;

    // Radial profile sampled on the composite Gauss-Legendre grid of [0, R].
    std::vector<double> grid_r;
    std::vector<double> grid_w;  // quadrature weights
    std::vector<double> grid_u;
    std::vector<double> grid_ur;

    double f_at_R() const { return source(config.radius); }
    double fprime_at_R() const { return source.derivative(config.radius); }
};

// Solves the radial problem. Throws domain_error (m <= 0) or validation_error
// (inadmissible source).
EnergyBallSolution solve_radial(const BallConfig& config, const RadialSource& f,
                                double m);

// Returns E_m(B_R); additionally checks the minimizer identity
// E = -1/2 int f u to 1e-8 relative and throws numerical_error on violation.
double energy_value(const EnergyBallSolution& sol);

// The optimal insulation distribution on the ball is the constant m/perimeter.
// Throws degenerate_distribution_error when the boundary trace vanishes.
double optimal_distribution(const EnergyBallSolution& sol);

// General form of Eq-style h = m|u|/int|u| for a sampled boundary trace with
// quadrature weights; used by the FEM oracle on perturbed domains.
std::vector<double> distribution_from_trace(std::span<const double> trace,
                                            std::span<const double> weights,
                                            double m);

}  // namespace insulab::ball
