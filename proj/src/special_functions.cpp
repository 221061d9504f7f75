#include "nabla/special_functions.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Lanczos series for x >= 0.5, shifted argument form: returns Gamma(x).
double lanczos_positive(double x) {
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (z + i);
    }
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double log_lanczos_positive(double x) {
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (z + i);
    }
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

[[noreturn]] void pole_error(const char* fn, double x) {
    std::ostringstream os;
    os << fn << ": pole at nonpositive integer argument " << x;
    throw domain_error(os.str());
}

}  // namespace

bool is_nonpositive_integer(double x) noexcept {
    return x <= 0.0 && x == std::floor(x);
}

double sin_pi(double x) noexcept {
    // Reduce by the nearest integer first; the reduction is exact, so the
    // only rounding left is in the final sin/cos call.
    double r = std::remainder(x, 2.0);  // r in [-1, 1]
    return std::sin(kPi * r);
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) {
        pole_error("gamma_fn", x);
    }
    if (x >= 0.5) {
        return lanczos_positive(x);
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return kPi / (sin_pi(x) * lanczos_positive(1.0 - x));
}

double log_gamma(double x) {
    if (is_nonpositive_integer(x)) {
        pole_error("log_gamma", x);
    }
    if (x >= 0.5) {
        return log_lanczos_positive(x);
    }
    return std::log(kPi / std::abs(sin_pi(x))) - log_lanczos_positive(1.0 - x);
}

double gamma_ratio(double num, double den) {
    if (is_nonpositive_integer(num)) {
        pole_error("gamma_ratio", num);
    }
    if (is_nonpositive_integer(den)) {
        // Gamma(den) poles: the ratio is an exact zero.
        return 0.0;
    }
    // Gamma alternates sign between consecutive negative poles: negative on
    // (-1,0), positive on (-2,-1), ... i.e. negative iff floor(x) is odd.
    auto gamma_sign = [](double x) {
        if (x > 0.0) return 1.0;
        return (static_cast<std::int64_t>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
    };
    const double sign = gamma_sign(num) * gamma_sign(den);
    return sign * std::exp(log_gamma(num) - log_gamma(den));
}

double binomial_general(double nu, std::int64_t n) {
    if (n < 0) {
        throw domain_error("binomial_general: n must be a nonnegative integer");
    }
    if (is_nonpositive_integer(nu + 1.0)) {
        pole_error("binomial_general", nu);
    }
    // Product form C(nu, n) = prod_{k=1..n} (nu + 1 - k) / k gives an exact
    // zero whenever nu is an integer in [0, n).
    double acc = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        acc *= (nu + 1.0 - static_cast<double>(k)) / static_cast<double>(k);
    }
    return acc;
}

double kummer_1f1(double a, double b, double z) {
    const bool terminating = is_nonpositive_integer(a);
    if (is_nonpositive_integer(b)) {
        // Allowed only if the a-series terminates before the pole, i.e. the
        // last denominator b + (|a|-1) is still below zero.
        if (!(terminating && a >= b)) {
            std::ostringstream os;
            os << "kummer_1f1: denominator parameter b = " << b
               << " is a nonpositive integer";
            throw domain_error(os.str());
        }
    }
    if (z == 0.0) {
        return 1.0;
    }
    if (terminating) {
        // Finite sum, safe for any sign of z.
        const auto last = static_cast<std::int64_t>(-a);
        double sum = 1.0;
        double term = 1.0;
        for (std::int64_t k = 0; k < last; ++k) {
            const double kd = static_cast<double>(k);
            term *= (a + kd) * z / ((b + kd) * (kd + 1.0));
            sum += term;
        }
        return sum;
    }
    if (z < 0.0) {
        // Kummer transformation avoids the catastrophic cancellation of the
        // alternating series: 1F1(a;b;z) = e^z 1F1(b-a;b;-z).
        return std::exp(z) * kummer_1f1(b - a, b, -z);
    }
    double sum = 1.0;
    double term = 1.0;
    for (int k = 0; k < 10000; ++k) {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * z / ((b + kd) * (kd + 1.0));
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            return sum;
        }
    }
    std::ostringstream os;
    os << "kummer_1f1: series failed to converge for a=" << a << " b=" << b
       << " z=" << z;
    throw convergence_error(os.str());
}

}  // namespace nabla
