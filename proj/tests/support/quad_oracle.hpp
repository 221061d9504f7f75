#pragma once

// Self-contained quadrature oracles for the tests. Independent of the
// library under test: gamma via std::tgamma, nodes computed locally.

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// 24-point Gauss-Legendre nodes and weights on [-1, 1], by Newton
// iteration on P_24.
inline const std::vector<std::pair<double, double>>& gl24() {
    static const std::vector<std::pair<double, double>> table = [] {
        constexpr int n = 24;
        auto legendre = [](double x) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 =
                    ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // derivative from the recurrence P'_n = n (x P_n - P_{n-1}) / (x^2-1)
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            return std::pair<double, double>{p1, dp};
        };
        std::vector<std::pair<double, double>> out;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 64; ++iter) {
                const auto [p, dp] = legendre(x);
                const double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) {
                    break;
                }
            }
            const auto [p, dp] = legendre(x);
            (void)p;
            out.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        return out;
    }();
    return table;
}

template <typename F>
double gauss_legendre(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (const auto& [x, w] : gl24()) {
        acc += w * f(mid + half * x);
    }
    return acc * half;
}

// Tanh-sinh rule for int_0^r h(s) s^{g} (r-s)^{beta} ds with g, beta > -1.
// The endpoint distances s and r-s are computed from the transform
// directly (never as r minus something), so the singular powers keep full
// precision arbitrarily close to the endpoints.
template <typename F>
double tanh_sinh_weighted(const F& h, double r, double g, double beta) {
    const double half = 0.5 * r;
    double prev = 0.0;
    double cur = 0.0;
    for (int level = 3; level <= 11; ++level) {
        const double step = std::ldexp(1.0, -level);
        const int kmax = static_cast<int>(std::ceil(6.5 / step));
        double acc = 0.0;
        for (int k = -kmax; k <= kmax; ++k) {
            const double t = k * step;
            const double u = 0.5 * kPi * std::sinh(t);
            const double e2u = std::exp(-2.0 * std::abs(u));
            const double denom = 1.0 + e2u;
            const double near_side = 2.0 * e2u / denom;  // 1 - |tanh(u)|
            const double far_side = 2.0 / denom;         // 1 + |tanh(u)|
            const double s = half * (u >= 0.0 ? far_side : near_side);
            const double r_minus_s = half * (u >= 0.0 ? near_side : far_side);
            if (s == 0.0 || r_minus_s == 0.0) {
                continue;
            }
            // sech^2(u) = (1 - tanh)(1 + tanh) = near_side * far_side
            const double weight =
                0.5 * kPi * std::cosh(t) * near_side * far_side;
            const double val = weight * std::pow(s, g) *
                               std::pow(r_minus_s, beta) * h(s);
            if (std::isfinite(val)) {
                acc += val;
            }
        }
        cur = acc * step * half;
        if (level > 4 && std::abs(cur - prev) <= 1e-13 * std::abs(cur)) {
            return cur;
        }
        prev = cur;
    }
    return cur;
}

// Riemann-Liouville integral of e^{c s} s^p, order mu, base 0.
inline double rl_oracle(double c, double p, double mu, double r) {
    const double integral = tanh_sinh_weighted(
        [c](double s) { return std::exp(c * s); }, r, p, mu - 1.0);
    return integral / std::tgamma(mu);
}

// n-fold iterated ordinary integral of f from 0, nested Gauss-Legendre.
template <typename F>
double iterated_integral(const F& f, int n, double r) {
    if (n == 0) {
        return f(r);
    }
    return gauss_legendre(
        [&](double s) { return iterated_integral(f, n - 1, s); }, 0.0, r);
}

// 5-point central differences, O(h^4).
template <typename F>
double fd_derivative1(const F& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) +
            f(x - 2.0 * h)) /
           (12.0 * h);
}

template <typename F>
double fd_derivative2(const F& f, double x, double h) {
    return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) +
            16.0 * f(x - h) - f(x - 2.0 * h)) /
           (12.0 * h * h);
}

}  // namespace oracle
