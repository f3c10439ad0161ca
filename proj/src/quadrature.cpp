#include "insulab/quadrature.hpp"

#include <array>

#include "insulab/errors.hpp"

namespace insulab::quad {

namespace {
// 5-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kNodes = {
    -0.9061798459386639928, -0.5384693101056830910, 0.0,
    0.5384693101056830910, 0.9061798459386639928};
constexpr std::array<double, 5> kWeights = {
    0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
    0.4786286704993664680, 0.2369268850561890875};
}  // namespace

Rule Rule::composite(double a, double b, int subintervals) {
    if (!(b > a) || subintervals < 1)
        throw domain_error("quad::Rule: invalid interval or subinterval count");
    Rule r;
    r.nodes.reserve(5 * subintervals);
    r.weights.reserve(5 * subintervals);
    const double h = (b - a) / subintervals;
    for (int k = 0; k < subintervals; ++k) {
        const double mid = a + (k + 0.5) * h;
        for (int q = 0; q < 5; ++q) {
            r.nodes.push_back(mid + 0.5 * h * kNodes[q]);
            r.weights.push_back(0.5 * h * kWeights[q]);
        }
    }
    return r;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int subintervals) {
    const Rule r = Rule::composite(a, b, subintervals);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

}  // namespace insulab::quad
