#include "insulab/ball_energy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "insulab/errors.hpp"
#include "insulab/kernels.hpp"
#include "insulab/quadrature.hpp"

namespace insulab::ball {

namespace {

constexpr int kSourceGridPoints = 1001;
constexpr int kMaxSourceDegree = 12;

// 5-point Gauss-Legendre on [a, b] for the partial-subinterval pieces of the
// cumulative integrals.
double gauss5(const std::function<double(double)>& f, double a, double b) {
    return quad::integrate(f, a, b, 1);
}

// Cumulative integral of g from 0, evaluable at any point of [0, R]:
// whole subintervals are accumulated once, the partial tail is integrated
// on demand.
class Cumulative {
public:
    Cumulative(std::function<double(double)> g, double R, int subintervals)
        : g_(std::move(g)), h_(R / subintervals) {
        cum_.resize(subintervals + 1, 0.0);
        for (int k = 0; k < subintervals; ++k)
            cum_[k + 1] = cum_[k] + gauss5(g_, k * h_, (k + 1) * h_);
    }

    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        auto k = static_cast<std::size_t>(x / h_);
        if (k >= cum_.size() - 1) k = cum_.size() - 2;
        return cum_[k] + gauss5(g_, k * h_, x);
    }

    double total() const { return cum_.back(); }

private:
    std::function<double(double)> g_;
    double h_;
    std::vector<double> cum_;
};

}  // namespace

BallConfig BallConfig::make(int n, double radius) {
    if (n < 2) throw domain_error("BallConfig: dimension must be >= 2");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw domain_error("BallConfig: radius must be positive");
    BallConfig c;
    c.n = n;
    c.radius = radius;
    c.omega_n = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    c.perimeter = n * c.omega_n * std::pow(radius, n - 1);
    c.volume = c.omega_n * std::pow(radius, n);
    return c;
}

double RadialSource::operator()(double r) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * r + coeffs[k];
    return v;
}

double RadialSource::derivative(double r) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) v = v * r + k * coeffs[k];
    return v;
}

void RadialSource::validate(double radius, bool require_nonzero) const {
    if (coeffs.empty()) throw validation_error("source: no coefficients given");
    if (degree() > kMaxSourceDegree)
        throw validation_error("source: polynomial degree exceeds 12");
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    const double tol = 1e-12 * std::max(1.0, scale);
    double max_value = 0.0;
    for (int i = 0; i < kSourceGridPoints; ++i) {
        const double r = radius * i / (kSourceGridPoints - 1.0);
        const double v = (*this)(r);
        if (v < -tol) {
            std::ostringstream msg;
            msg << "source: f(" << r << ") = " << v << " < 0";
            throw validation_error(msg.str());
        }
        max_value = std::max(max_value, v);
    }
    if (require_nonzero && max_value <= 0.0)
        throw validation_error("source: f vanishes identically on [0, R]");
}

EnergyBallSolution solve_radial(const BallConfig& config, const RadialSource& f,
                                double m) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw domain_error("solve_radial: m must be positive");
    f.validate(config.radius, /*require_nonzero=*/true);

    const int n = config.n;
    const double R = config.radius;

    EnergyBallSolution sol;
    sol.config = config;
    sol.source = f;
    sol.m = m;

    // f-bar and the closed-form boundary data of the radial solution.
    const auto fsn = [&](double s) { return f(s) * std::pow(s, n - 1); };
    Cumulative flux(fsn, R, quad::kDefaultSubintervals);
    sol.mean_f = n * flux.total() / std::pow(R, n);
    sol.ur_R = -(R / n) * sol.mean_f;
    sol.u_R = m * sol.mean_f / (n * n * config.omega_n * std::pow(R, n - 2));
    sol.urr_R = -f(R) - (n - 1) / R * sol.ur_R;

    // u_r(r) = -r^{1-n} int_0^r f(s) s^{n-1} ds, by quadrature.
    const auto ur_at = [&](double r) {
        if (r <= 0.0) return 0.0;
        return -std::pow(r, 1 - n) * flux(r);
    };
    Cumulative ur_integral(ur_at, R, quad::kDefaultSubintervals);
    const double ur_total = ur_integral.total();
    const auto u_at = [&](double r) {
        return sol.u_R - (ur_total - ur_integral(r));
    };

    const quad::Rule rule = quad::Rule::composite(0.0, R);
    sol.grid_r = rule.nodes;
    sol.grid_w = rule.weights;
    sol.grid_u.resize(rule.nodes.size());
    sol.grid_ur.resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sol.grid_ur[i] = ur_at(rule.nodes[i]);
        sol.grid_u[i] = u_at(rule.nodes[i]);
    }

    // E_m = 1/2 int |grad u|^2 + (1/2m)(int_boundary u)^2 - int f u,
    // all radial integrals on the shared quadrature grid.
    const double surface = n * config.omega_n;
    std::vector<double> grad_integrand(rule.nodes.size());
    std::vector<double> load_integrand(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double rp = std::pow(rule.nodes[i], n - 1);
        grad_integrand[i] = sol.grid_ur[i] * sol.grid_ur[i] * rp;
        load_integrand[i] = f(rule.nodes[i]) * sol.grid_u[i] * rp;
    }
    const double grad_term =
        0.5 * surface * kernels::dot(rule.weights, grad_integrand);
    const double boundary_term =
        (config.perimeter * sol.u_R) * (config.perimeter * sol.u_R) / (2.0 * m);
    const double load_term = surface * kernels::dot(rule.weights, load_integrand);
    sol.energy = grad_term + boundary_term - load_term;
    return sol;
}

double energy_value(const EnergyBallSolution& sol) {
    // Minimizer identity: E = -1/2 int f u. Both sides come from different
    // combinations of the profile integrals, so this really exercises the
    // Euler-Lagrange relation.
    const int n = sol.config.n;
    std::vector<double> load_integrand(sol.grid_r.size());
    for (std::size_t i = 0; i < sol.grid_r.size(); ++i)
        load_integrand[i] = sol.source(sol.grid_r[i]) * sol.grid_u[i] *
                            std::pow(sol.grid_r[i], n - 1);
    const double load =
        n * sol.config.omega_n * kernels::dot(sol.grid_w, load_integrand);
    if (std::abs(sol.energy + 0.5 * load) > 1e-8 * std::abs(sol.energy))
        throw numerical_error("energy_value: E != -1/2 int f u beyond tolerance");
    return sol.energy;
}

double optimal_distribution(const EnergyBallSolution& sol) {
    if (sol.u_R <= 0.0)
        throw degenerate_distribution_error(
            "optimal_distribution: boundary trace vanishes");
    return sol.m / sol.config.perimeter;
}

std::vector<double> distribution_from_trace(std::span<const double> trace,
                                            std::span<const double> weights,
                                            double m) {
    if (trace.size() != weights.size())
        throw domain_error("distribution_from_trace: size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i)
        total += weights[i] * std::abs(trace[i]);
    if (total <= 0.0)
        throw degenerate_distribution_error(
            "distribution_from_trace: |u| integrates to zero on the boundary");
    std::vector<double> h(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i)
        h[i] = m * std::abs(trace[i]) / total;
    return h;
}

}  // namespace insulab::ball
