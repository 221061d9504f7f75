#include "nabla/dfc.hpp"

#include <cmath>
#include <sstream>

#include "nabla/errors.hpp"
#include "nabla/special_functions.hpp"

namespace nabla {

namespace {

[[noreturn]] void out_of_domain(const char* op, std::int64_t t,
                                const GridFunction& u) {
    std::ostringstream os;
    os << op << ": t = " << t << " outside grid domain [" << u.base << ", "
       << u.last() << "]";
    throw domain_error(os.str());
}

// Weights K(j+1) = (j+1-1)^(nu-1 rising)... i.e. w[j] multiplies U(t-j):
// w[0] = 1, w[j] = w[j-1] (j + nu - 1) / j.
std::vector<double> kernel_weights(double nu, std::int64_t count) {
    std::vector<double> w(static_cast<std::size_t>(count));
    w[0] = 1.0;
    for (std::int64_t j = 1; j < count; ++j) {
        w[static_cast<std::size_t>(j)] =
            w[static_cast<std::size_t>(j - 1)] *
            (static_cast<double>(j) + nu - 1.0) / static_cast<double>(j);
    }
    return w;
}

}  // namespace

double GridFunction::at(std::int64_t t) const {
    if (!contains(t)) {
        out_of_domain("GridFunction::at", t, *this);
    }
    return values[static_cast<std::size_t>(t - base)];
}

double rising_factorial(double t, double nu) {
    if (nu == 0.0) {
        return 1.0;
    }
    if (t == 0.0) {
        return 0.0;
    }
    if (nu > 0.0 && nu == std::floor(nu) && nu <= 1024.0) {
        double acc = 1.0;
        for (double k = 0.0; k < nu; k += 1.0) {
            acc *= t + k;
        }
        return acc;
    }
    return gamma_ratio(t + nu, t);
}

GridFunction nabla(const GridFunction& u) {
    if (u.values.size() < 2) {
        throw domain_error("nabla: grid needs at least two points");
    }
    GridFunction out;
    out.base = u.base + 1;
    out.values.resize(u.values.size() - 1);
    for (std::size_t i = 0; i + 1 < u.values.size(); ++i) {
        out.values[i] = u.values[i + 1] - u.values[i];
    }
    return out;
}

GridFunction shift(const GridFunction& u, std::int64_t n) {
    GridFunction out = u;
    out.base = u.base - n;
    return out;
}

double nabla_pow_at(const GridFunction& u, std::int64_t n, std::int64_t t) {
    if (n < 0) {
        throw domain_error("nabla_pow_at: n must be nonnegative");
    }
    if (!u.contains(t) || !u.contains(t - n)) {
        out_of_domain("nabla_pow_at", t, u);
    }
    double acc = 0.0;
    double coeff = 1.0;  // (-1)^k C(n, k)
    for (std::int64_t k = 0; k <= n; ++k) {
        acc += coeff * u.at(t - k);
        coeff *= -static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return acc;
}

double fractional_sum(const GridFunction& u, double nu, std::int64_t t) {
    if (!(nu > 0.0)) {
        throw domain_error("fractional_sum: order must be positive");
    }
    if (!u.contains(t)) {
        out_of_domain("fractional_sum", t, u);
    }
    const std::int64_t count = t - u.base + 1;
    const std::vector<double> w = kernel_weights(nu, count);
    double acc = 0.0;
    for (std::int64_t j = count - 1; j >= 0; --j) {
        acc += w[static_cast<std::size_t>(j)] * u.at(t - j);
    }
    return acc;
}

double fractional_difference(const GridFunction& u, double nu,
                             std::int64_t t) {
    if (nu < 0.0) {
        throw domain_error("fractional_difference: order must be nonnegative");
    }
    if (nu == 0.0) {
        return u.at(t);
    }
    const auto n = static_cast<std::int64_t>(std::ceil(nu));
    if (!u.contains(t) || t - n < u.base) {
        out_of_domain("fractional_difference", t, u);
    }
    const double g = static_cast<double>(n) - nu;
    if (g == 0.0) {
        return nabla_pow_at(u, n, t);
    }
    // V(x) = (nabla^{-g} U)(x) on [t-n, t], then the exact n-fold nabla.
    GridFunction v;
    v.base = t - n;
    v.values.resize(static_cast<std::size_t>(n) + 1);
    for (std::int64_t x = t - n; x <= t; ++x) {
        v.values[static_cast<std::size_t>(x - (t - n))] =
            fractional_sum(u, g, x);
    }
    return nabla_pow_at(v, n, t);
}

double nabla_apply(const GridFunction& u, double order, std::int64_t t) {
    if (order > 0.0) {
        return fractional_difference(u, order, t);
    }
    if (order == 0.0) {
        return u.at(t);
    }
    return fractional_sum(u, -order, t);
}

double power_rule(double nu, double upsilon, std::int64_t a, std::int64_t t) {
    if (!(nu > 0.0)) {
        throw domain_error("power_rule: order must be positive");
    }
    if (t < a) {
        std::ostringstream os;
        os << "power_rule: t = " << t << " below base " << a;
        throw domain_error(os.str());
    }
    const double x = static_cast<double>(t - a) + 1.0;
    return gamma_ratio(upsilon + 1.0, nu + upsilon + 1.0) *
           rising_factorial(x, nu + upsilon);
}

double leibniz_difference(const GridFunction& u, const GridFunction& y,
                          double nu, std::int64_t t) {
    if (u.base != 0 || y.base != 0) {
        throw domain_error("leibniz_difference: both grids must be based at 0");
    }
    if (!(nu > 0.0 && nu < 2.0)) {
        throw domain_error("leibniz_difference: order must lie in (0, 2)");
    }
    const auto ceil_nu = static_cast<std::int64_t>(std::ceil(nu));
    if (t < ceil_nu || !u.contains(t) || !y.contains(t)) {
        out_of_domain("leibniz_difference", t, u);
    }
    double acc = 0.0;
    for (std::int64_t n = 0; n <= t; ++n) {
        const double c = binomial_general(nu, n);
        if (c == 0.0) {
            continue;
        }
        acc += c * nabla_apply(u, nu - static_cast<double>(n), t - n) *
               nabla_pow_at(y, n, t);
    }
    return acc;
}

}  // namespace nabla
