#pragma once

#include <cstdint>

namespace nabla {

// True when x is, up to double rounding, an integer <= 0. Gamma and the
// confluent series use this to detect poles / terminating cases.
bool is_nonpositive_integer(double x) noexcept;

// sin(pi*x) with the argument reduced exactly in the integer part, so the
// reflection formula stays accurate for large |x|.
double sin_pi(double x) noexcept;

// Gamma function on the real line (Lanczos approximation, reflection for
// x < 0.5). Raises domain_error at the poles 0, -1, -2, ...
double gamma_fn(double x);

// log|Gamma(x)|, same pole behaviour.
double log_gamma(double x);

// Gamma(num) / Gamma(den) evaluated in log space so ratios of large
// arguments stay finite; sign handled via reflection counts.
double gamma_ratio(double num, double den);

// Generalized binomial coefficient C(nu, n) = Gamma(nu+1) /
// (Gamma(n+1) Gamma(nu-n+1)) for integer n >= 0, real nu. Returns an exact
// 0 when nu is an integer with 0 <= nu < n; raises domain_error when nu is
// a negative integer (numerator pole).
double binomial_general(double nu, std::int64_t n);

// Kummer confluent hypergeometric 1F1(a; b; z). b must not be a
// nonpositive integer unless the series terminates first (a a nonpositive
// integer with |a| < |b|'s pole index). Uses the Kummer transformation
// for z < 0 to avoid cancellation; raises convergence_error when the
// series fails to settle.
double kummer_1f1(double a, double b, double z);

}  // namespace nabla
