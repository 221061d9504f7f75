#pragma once

#include <cstdint>
#include <vector>

namespace nabla {

// A real-valued function sampled on the integer grid {base, base+1, ...,
// base + values.size() - 1}.
struct GridFunction {
    std::int64_t base = 0;
    std::vector<double> values;

    std::int64_t last() const {
        return base + static_cast<std::int64_t>(values.size()) - 1;
    }
    bool contains(std::int64_t t) const { return t >= base && t <= last(); }
    double at(std::int64_t t) const;
};

// Rising factorial t^(nu rising) = Gamma(t + nu) / Gamma(t), with the
// conventions t^(0 rising) = 1 for every t and 0^(nu rising) = 0 for
// nu != 0. Integer nu >= 0 is evaluated as an exact product.
double rising_factorial(double t, double nu);

// Backward difference as a grid map: (nabla U)(t) = U(t) - U(t-1),
// defined on {base+1, ..., last}.
GridFunction nabla(const GridFunction& u);

// Forward shift (E^n U)(t) = U(t + n); the domain moves down by n.
GridFunction shift(const GridFunction& u, std::int64_t n);

// n-fold backward difference at a point, sum_k (-1)^k C(n,k) U(t-k).
double nabla_pow_at(const GridFunction& u, std::int64_t n, std::int64_t t);

// Fractional sum of order nu > 0 based at u.base:
//   (nabla^{-nu} U)(t) = sum_{s=base}^{t} [(t-s+1)^(nu-1 rising)/Gamma(nu)] U(s).
// The kernel weights are built by the recurrence K(1) = 1,
// K(x+1) = K(x) (x+nu-1)/x, never through gamma ratios.
double fractional_sum(const GridFunction& u, double nu, std::int64_t t);

// Fractional difference of order nu >= 0 via nabla^n of the (n - nu)-sum
// with n = ceil(nu); collapses to the exact n-fold difference at integer
// orders and to the identity at nu = 0. Requires t - n >= base.
double fractional_difference(const GridFunction& u, double nu, std::int64_t t);

// Sign-dispatching wrapper: order > 0 applies fractional_difference,
// order == 0 is the identity, order < 0 applies the fractional sum of
// order -order.
double nabla_apply(const GridFunction& u, double order, std::int64_t t);

// Closed form of the fractional sum of a rising-factorial power:
//   nabla_a^{-nu} (t - a + 1)^(upsilon rising)
//     = Gamma(upsilon+1)/Gamma(nu+upsilon+1) (t - a + 1)^(nu+upsilon rising).
double power_rule(double nu, double upsilon, std::int64_t a, std::int64_t t);

// Discrete Leibniz expansion at base 0:
//   nabla^{nu}(U Y)(t) = sum_{n=0}^{t} C(nu, n)
//       [nabla^{nu-n} U](t-n) [nabla^n Y](t),
// with the inner operators dispatched on the sign of nu - n. Requires
// both grids based at 0, nu in (0, 2), and t >= ceil(nu).
double leibniz_difference(const GridFunction& u, const GridFunction& y,
                          double nu, std::int64_t t);

}  // namespace nabla
