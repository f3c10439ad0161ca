#include "insulab/energy_stability.hpp"

#include <cmath>
#include <random>

#include "insulab/errors.hpp"
#include "insulab/quadrature.hpp"

namespace insulab::stability {

namespace {

constexpr int kMonotonicityGrid = 1001;

struct SourceShape {
    bool constant = false;
    bool nondecreasing = false;
    bool nonincreasing = false;
};

SourceShape detect_shape(const ball::RadialSource& f, double R) {
    double scale = 0.0;
    std::vector<double> v(kMonotonicityGrid);
    for (int i = 0; i < kMonotonicityGrid; ++i) {
        v[i] = f(R * i / (kMonotonicityGrid - 1.0));
        scale = std::max(scale, std::abs(v[i]));
    }
    const double tol = 1e-12 * std::max(1.0, scale);
    SourceShape s;
    s.nondecreasing = s.nonincreasing = true;
    double lo = v[0], hi = v[0];
    for (int i = 1; i < kMonotonicityGrid; ++i) {
        if (v[i] < v[i - 1] - tol) s.nondecreasing = false;
        if (v[i] > v[i - 1] + tol) s.nonincreasing = false;
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    s.constant = (hi - lo) <= tol;
    return s;
}

double mean_over_ball(const ball::BallConfig& config, const ball::RadialSource& f) {
    const int n = config.n;
    const double R = config.radius;
    const double integral = quad::integrate(
        [&](double s) { return f(s) * std::pow(s, n - 1); }, 0.0, R);
    return n * integral / std::pow(R, n);
}

double criterion_value(const ball::BallConfig& config, const ball::RadialSource& f,
                       double m, double fbar) {
    const int n = config.n;
    const double R = config.radius;
    const double fR = f(R);
    return (fR - (n - 1.0) / n * fbar) * (fR - fbar) +
           f.derivative(R) * fbar * m /
               (n * n * config.omega_n * std::pow(R, n - 1));
}

}  // namespace

const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::kNondecreasingUnstable: return "nondecreasing-unstable";
        case CaseLabel::kNonincreasingStable: return "nonincreasing-stable";
        case CaseLabel::kThreshold: return "threshold";
        case CaseLabel::kUnclassified: return "unclassified";
    }
    return "?";
}

ModeForm mode_form(const ball::EnergyBallSolution& bd, int s) {
    if (s < 1)
        throw domain_error("mode_form: s >= 1 (s = 0 excluded by volume preservation)");
    const int n = bd.config.n;
    const double R = bd.config.radius;
    const double P = bd.config.perimeter;

    ModeForm mf;
    mf.s = s;
    mf.linearized = -(R / s) * bd.urr_R * bd.urr_R;
    mf.gradient = bd.urr_R * bd.ur_R;
    mf.source = -bd.fprime_at_R() * bd.u_R;
    mf.nonlocal = (P * bd.u_R * bd.u_R / bd.m) *
                  (static_cast<double>(s) * (s + n - 2) - (n - 1)) / (R * R);
    mf.q_value = mf.linearized + mf.gradient + mf.source + mf.nonlocal;
    return mf;
}

StabilityVerdict classify(const ball::BallConfig& config,
                          const ball::RadialSource& f, double m) {
    if (!(m > 0.0)) throw domain_error("classify: m must be positive");
    f.validate(config.radius, /*require_nonzero=*/true);

    const double fbar = mean_over_ball(config, f);
    const double fR = f(config.radius);
    const double fpR = f.derivative(config.radius);
    const SourceShape shape = detect_shape(f, config.radius);
    const double cond_rhs = (config.n - 1.0) / config.n * fbar;

    StabilityVerdict verdict;
    verdict.criterion_value = criterion_value(config, f, m, fbar);
    // Roundoff in f-bar can push an exactly marginal source (constant f) to
    // either side of zero; snap those to the stable side.
    const double snap = 1e-13 * std::max({fR * fR, fbar * fbar, 1e-300});
    verdict.stable = verdict.criterion_value <= snap;

    if (shape.nondecreasing && !shape.constant) {
        verdict.case_label = CaseLabel::kNondecreasingUnstable;
    } else if (fpR < 0.0 && fR < cond_rhs) {
        verdict.case_label = CaseLabel::kThreshold;
        verdict.m1 = threshold_m1(config, f);
    } else if (shape.nonincreasing && fR >= cond_rhs) {
        verdict.case_label = CaseLabel::kNonincreasingStable;
    } else {
        verdict.case_label = CaseLabel::kUnclassified;
    }
    return verdict;
}

std::optional<double> threshold_m1(const ball::BallConfig& config,
                                   const ball::RadialSource& f) {
    f.validate(config.radius, /*require_nonzero=*/true);
    const int n = config.n;
    const double R = config.radius;
    const double fbar = mean_over_ball(config, f);
    const double fR = f(R);
    const double fpR = f.derivative(R);
    if (!(fpR < 0.0) || !(fR < (n - 1.0) / n * fbar)) return std::nullopt;

    const double m1 = -(fR - (n - 1.0) / n * fbar) * (fR - fbar) * n * n *
                      config.omega_n * std::pow(R, n - 1) / (fpR * fbar);
    // The criterion is linear in m with negative slope; confirm the flip.
    if (!(criterion_value(config, f, 0.9 * m1, fbar) > 0.0) ||
        !(criterion_value(config, f, 1.1 * m1, fbar) < 0.0))
        throw verification_error("threshold_m1: verdict does not flip around m1");
    return m1;
}

int worst_mode(const ball::EnergyBallSolution& bd, int s_max) {
    if (s_max < 2) throw domain_error("worst_mode: s_max must be >= 2");
    int argmin = 1;
    double qmin = mode_form(bd, 1).q_value;
    for (int s = 2; s <= s_max; ++s) {
        const double q = mode_form(bd, s).q_value;
        if (q < qmin) {
            qmin = q;
            argmin = s;
        }
    }
    if (argmin != 1)
        throw verification_error(
            "worst_mode: translation mode s = 1 did not attain the minimum");
    return argmin;
}

std::pair<double, double> steklov_mode_integrals(const ball::BallConfig& config,
                                                 int s) {
    if (s < 1) throw domain_error("steklov_mode_integrals: s >= 1");
    const int n = config.n;
    const double R = config.radius;
    // v_s = r^s Y_s with int_{S^{n-1}} Y_s^2 = 1; |grad v|^2 integrates the
    // radial and tangential parts, s^2 + s(s+n-2), against r^{2s+n-3}.
    const double boundary = std::pow(R, 2 * s) * std::pow(R, n - 1);
    const double radial = quad::integrate(
        [&](double r) { return std::pow(r, 2 * s + n - 3); }, 0.0, R);
    const double gradient =
        (static_cast<double>(s) * s + s * (s + n - 2.0)) * radial;
    return {boundary, gradient};
}

SteklovReport steklov_inequality_check(const ball::BallConfig& config, int trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw domain_error("steklov_inequality_check: trials >= 1");
    const double R = config.radius;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> mode_count(1, 4);
    std::uniform_int_distribution<int> mode_order(1, 8);

    SteklovReport rep;
    rep.trials = trials;
    rep.min_inequality_margin = std::numeric_limits<double>::infinity();

    const auto per_mode = [&](int s, double c) {
        const auto [b, g] = steklov_mode_integrals(config, s);
        return std::pair{c * c * b, c * c * g};
    };

    // Equality case: the pure s = 1 mode is the first nontrivial Steklov
    // eigenfunction.
    {
        const auto [b1, g1] = per_mode(1, 1.0);
        rep.pure_s1_residual = std::abs(b1 - R * g1) / std::abs(b1);
    }

    for (int t = 0; t < trials; ++t) {
        const int k = mode_count(rng);
        double boundary = 0.0, gradient = 0.0;
        for (int j = 0; j < k; ++j) {
            const int s = mode_order(rng);
            const auto [bs, gs] = per_mode(s, coeff(rng));
            rep.max_identity_residual =
                std::max(rep.max_identity_residual,
                         bs > 0 ? std::abs(bs - (R / s) * gs) / bs : 0.0);
            boundary += bs;
            gradient += gs;
        }
        const double margin = R * gradient - boundary;
        rep.min_inequality_margin = std::min(rep.min_inequality_margin, margin);
        if (margin < -1e-12 * boundary) rep.inequality_holds = false;
    }
    return rep;
}

}  // namespace insulab::stability
