#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace nabla {

// kappa * e^{c r} * r^{p}.
struct ExpPowerTerm {
    double kappa = 1.0;
    double c = 0.0;
    double p = 0.0;
};

// Multiplicative confluent factor 1F1(a; b; scale * r).
struct ConfluentFactor {
    double a = 0.0;
    double b = 1.0;
    double scale = 0.0;
};

// Finite sum of exp-power terms, optionally times a single confluent
// factor. Invariant: when f1f1 is set, terms has exactly one element.
struct StructuredFunction {
    std::vector<ExpPowerTerm> terms;
    std::optional<ConfluentFactor> f1f1;
};

// Value together with first and second derivatives at a point.
struct Jet2 {
    double f = 0.0;
    double df = 0.0;
    double d2f = 0.0;
};

StructuredFunction make_term(double kappa, double c, double p);

// Merge terms with equal (c, p), drop zero coefficients, sort by (c, p).
StructuredFunction normalized(StructuredFunction f);

// Closed form of the order-mu Riemann-Liouville integral of e^{c s} s^{p}
// based at 0:
//   Gamma(p+1)/Gamma(p+mu+1) r^{p+mu} 1F1(p+1; p+mu+1; c r).
// Requires mu > 0 and p > -1.
StructuredFunction rl_exp_power_closed_form(double c, double p, double mu);

// Exact n-fold derivative of a pure exp-power sum by the product rule.
// Rejects functions carrying a confluent factor.
StructuredFunction integer_derivative(const StructuredFunction& f,
                                      std::int64_t n);

// Riemann-Liouville operator of arbitrary real order applied to a single
// exp-power term (order < 0: integral of order -order; order 0: identity;
// positive integer: exact derivatives; positive non-integer nu: exact
// differentiation of the (ceil(nu) - nu)-integral, which telescopes to
//   Gamma(p+1)/Gamma(p-nu+1) r^{p-nu} 1F1(p+1; p-nu+1; c r),
// rejected with a diagnostic when p-nu+1 lands on a nonpositive integer).
StructuredFunction rl_apply(const ExpPowerTerm& term, double order);

// Order-mu RL integral of an exp-power term by adaptive quadrature with
// the endpoint singularities handled by the weight class (substitution
// s = r u maps the kernel onto (1-u)^{mu-1} u^{p}).
double rl_integral_quadrature(const ExpPowerTerm& term, double mu, double r);

double evaluate(const StructuredFunction& f, double r);

// Value plus exact first and second derivatives; confluent derivatives use
// (d/dz) 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z).
Jet2 evaluate_jet(const StructuredFunction& f, double r);

}  // namespace nabla
