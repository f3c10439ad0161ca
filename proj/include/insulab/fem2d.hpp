#pragma once

// Independent 2D finite-element oracle on volume-preserving harmonically
// perturbed disks: piecewise-linear elements on a structured polar mesh.
// Evaluates the energy and eigenvalue functionals from their variational
// definitions, finite-differences the energy in the deformation parameter,
// and probes the nonsmooth eigenvalue regime with a sign-iteration solver
// plus a contact-arc sweep.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "insulab/ball_energy.hpp"
#include "insulab/kernels.hpp"

namespace insulab::fem {

// Volume-preserving single-mode boundary perturbation of the disk of radius R:
//   r(theta) = rho R (1 + t a cos(s theta)),  rho = (1 + t^2 a^2 / 2)^{-1/2},
// so that the enclosed area is exactly pi R^2 for every t.
struct PerturbedDisk {
    double R = 1.0;
    int s = 1;
    double a = 1.0;
    double t = 0.0;

    static PerturbedDisk make(double R, int s, double a, double t);

    double rho() const;
    double boundary_radius(double theta) const;
};

struct Mesh {
    int n_r = 0;
    int n_theta = 0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::array<std::int32_t, 3>> triangles;
    std::vector<std::int32_t> boundary;  // boundary node ids in angular order

    std::size_t node_count() const { return x.size(); }
    double polygon_area() const;
    double polygon_perimeter() const;
};

Mesh build_mesh(const PerturbedDisk& disk, int n_r, int n_theta);

// Assembled P1 system: pure-Neumann stiffness A, consistent mass M, boundary
// trace vector b (b.u ~ boundary integral of u), load F (F.u ~ int f u).
struct FemSystem {
    Mesh mesh;
    kernels::CsrMatrix stiffness;
    kernels::CsrMatrix mass;
    std::vector<double> boundary_vector;
    std::vector<double> load;
};

FemSystem build_system(const PerturbedDisk& disk, const ball::RadialSource& f,
                       int n_r, int n_theta);

struct EnergySolveResult {
    std::vector<double> field;
    double energy = 0.0;
    double boundary_flux = 0.0;  // b.u at the solution
    int cg_iterations = 0;
};

// Minimizes 1/2 u'Au + (1/2m)(b.u)^2 - F.u in the positive-trace regime via a
// deflated CG solve of the singular Neumann part plus the exact rank-one flux
// condition. Throws regime_error when the solved trace is not positive.
EnergySolveResult solve_energy(const FemSystem& sys, double m);

struct EnergyDerivatives {
    double d1 = 0.0;  // central first difference of E_m(Omega_t) at t = 0
    double d2 = 0.0;  // central second difference
    double e_minus = 0.0, e_zero = 0.0, e_plus = 0.0;
};

// Central differences of t -> E_m(Omega_t) over the exact-area family, with a
// fixed mesh topology across the stencil. dt must lie in [1e-3, 5e-2].
EnergyDerivatives energy_derivatives(double R, const ball::RadialSource& f,
                                     double m, int s, double a, double dt,
                                     int n_r, int n_theta);

// Boundary sign weights for the nonsmooth quotient; one entry per boundary
// node, each +1 or -1.
struct SignPattern {
    std::vector<std::int8_t> weights;
};

enum class EigenCandidate { kSignIteration, kContactArc };

struct EigenSolveResult {
    double lambda = 0.0;  // true nonsmooth quotient at the returned field
    std::vector<double> field;
    SignPattern pattern;
    bool sign_loop_converged = false;
    EigenCandidate winner = EigenCandidate::kSignIteration;
    double mu2_discrete = 0.0;  // first nonzero Neumann eigenvalue of the mesh
};

// Minimizes the nonsmooth Rayleigh quotient
//   (u'Au + (1/m)(sum_i b_i |u_i|)^2) / u'Mu.
// Runs the sign-iteration fixed-point loop from the provided pattern (or from
// the constant-sign and second-Neumann-mode defaults), and below the uniform
// regime additionally sweeps contact-arc candidates (trace pinned to zero on a
// boundary arc), which is where the symmetry-broken minimizer lives. Returns
// the best iterate by true quotient.
EigenSolveResult solve_eigen(const FemSystem& sys, double m,
                             const std::optional<SignPattern>& init = std::nullopt);

// Discrete second Neumann eigenpair of (A, M) (constants deflated).
std::pair<double, std::vector<double>> neumann_mode2(const FemSystem& sys);

struct SymmetryScanRow {
    double m = 0.0;
    double lambda = 0.0;
    double h_cv = 0.0;  // coefficient of variation of h on the boundary
    bool one_signed_trace = false;
    bool predicted_uniform = false;  // m > m0 from the Bessel threshold
    bool converged = false;
};

// Runs solve_eigen across the m grid on the unperturbed disk of radius R and
// measures the uniformity of the optimal distribution h = m|u|/int|u|.
std::vector<SymmetryScanRow> symmetry_breaking_scan(double R,
                                                    const std::vector<double>& m_grid,
                                                    int n_r, int n_theta);

// Plain-text mesh/field dump: node, triangle and nodal-value tables.
void write_dump(std::ostream& os, const Mesh& mesh,
                const std::vector<double>& values);

}  // namespace insulab::fem
