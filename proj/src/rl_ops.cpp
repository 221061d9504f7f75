#include "nabla/rl_ops.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "nabla/errors.hpp"
#include "nabla/special_functions.hpp"

namespace nabla {

namespace {

void require_integrable(double p, const char* op) {
    if (!(p > -1.0)) {
        std::ostringstream os;
        os << op << ": power p = " << p
           << " must exceed -1 for the integral to exist";
        throw domain_error(os.str());
    }
}

struct QawsParams {
    double cr = 0.0;
};

double qaws_integrand(double u, void* raw) {
    const auto* params = static_cast<const QawsParams*>(raw);
    return std::exp(params->cr * u);
}

}  // namespace

StructuredFunction make_term(double kappa, double c, double p) {
    StructuredFunction f;
    f.terms.push_back({kappa, c, p});
    return f;
}

StructuredFunction normalized(StructuredFunction f) {
    std::sort(f.terms.begin(), f.terms.end(),
              [](const ExpPowerTerm& x, const ExpPowerTerm& y) {
                  return x.c != y.c ? x.c < y.c : x.p < y.p;
              });
    std::vector<ExpPowerTerm> merged;
    for (const ExpPowerTerm& t : f.terms) {
        if (!merged.empty() && merged.back().c == t.c &&
            merged.back().p == t.p) {
            merged.back().kappa += t.kappa;
        } else {
            merged.push_back(t);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const ExpPowerTerm& t) {
                                    return t.kappa == 0.0;
                                }),
                 merged.end());
    if (merged.empty()) {
        merged.push_back({0.0, 0.0, 0.0});
    }
    f.terms = std::move(merged);
    if (f.f1f1 && f.terms.size() != 1) {
        throw domain_error(
            "normalized: confluent factor requires exactly one term");
    }
    return f;
}

StructuredFunction rl_exp_power_closed_form(double c, double p, double mu) {
    if (!(mu > 0.0)) {
        throw domain_error("rl_exp_power_closed_form: order mu must be positive");
    }
    require_integrable(p, "rl_exp_power_closed_form");
    StructuredFunction f =
        make_term(gamma_ratio(p + 1.0, p + mu + 1.0), 0.0, p + mu);
    f.f1f1 = ConfluentFactor{p + 1.0, p + mu + 1.0, c};
    return f;
}

StructuredFunction integer_derivative(const StructuredFunction& f,
                                      std::int64_t n) {
    if (n < 0) {
        throw domain_error("integer_derivative: n must be nonnegative");
    }
    if (f.f1f1) {
        throw domain_error(
            "integer_derivative: confluent factors are not supported here");
    }
    StructuredFunction cur = f;
    for (std::int64_t step = 0; step < n; ++step) {
        StructuredFunction next;
        for (const ExpPowerTerm& t : cur.terms) {
            if (t.c != 0.0) {
                next.terms.push_back({t.kappa * t.c, t.c, t.p});
            }
            if (t.p != 0.0) {
                next.terms.push_back({t.kappa * t.p, t.c, t.p - 1.0});
            }
        }
        cur = normalized(std::move(next));
    }
    return normalized(std::move(cur));
}

StructuredFunction rl_apply(const ExpPowerTerm& term, double order) {
    if (order == 0.0) {
        StructuredFunction f;
        f.terms.push_back(term);
        return f;
    }
    if (order < 0.0) {
        StructuredFunction f = rl_exp_power_closed_form(term.c, term.p, -order);
        f.terms[0].kappa *= term.kappa;
        return f;
    }
    if (order == std::floor(order)) {
        StructuredFunction f;
        f.terms.push_back(term);
        return integer_derivative(f, static_cast<std::int64_t>(order));
    }
    require_integrable(term.p, "rl_apply");
    const double b = term.p - order + 1.0;
    if (is_nonpositive_integer(b)) {
        std::ostringstream os;
        os << "rl_apply: confluent denominator parameter " << b
           << " is a nonpositive integer for order " << order
           << " on power " << term.p;
        throw domain_error(os.str());
    }
    StructuredFunction f =
        make_term(term.kappa * gamma_ratio(term.p + 1.0, b), 0.0,
                  term.p - order);
    f.f1f1 = ConfluentFactor{term.p + 1.0, b, term.c};
    return f;
}

double rl_integral_quadrature(const ExpPowerTerm& term, double mu, double r) {
    if (!(mu > 0.0)) {
        throw domain_error("rl_integral_quadrature: order mu must be positive");
    }
    require_integrable(term.p, "rl_integral_quadrature");
    if (!(r > 0.0)) {
        throw domain_error("rl_integral_quadrature: r must be positive");
    }
    static std::once_flag handler_once;
    std::call_once(handler_once, [] { gsl_set_error_handler_off(); });

    // Substitute s = r u:
    //   (1/Gamma(mu)) int_0^r (r-s)^{mu-1} e^{c s} s^p ds
    //     = r^{p+mu}/Gamma(mu) int_0^1 (1-u)^{mu-1} u^p e^{c r u} du,
    // and the u-integral is exactly QAWS's weight class on [0, 1].
    std::unique_ptr<gsl_integration_workspace,
                    decltype(&gsl_integration_workspace_free)>
        ws(gsl_integration_workspace_alloc(2000),
           &gsl_integration_workspace_free);
    std::unique_ptr<gsl_integration_qaws_table,
                    decltype(&gsl_integration_qaws_table_free)>
        table(gsl_integration_qaws_table_alloc(term.p, mu - 1.0, 0, 0),
              &gsl_integration_qaws_table_free);
    if (!ws || !table) {
        throw convergence_error("rl_integral_quadrature: allocation failed");
    }

    QawsParams params{term.c * r};
    gsl_function f;
    f.function = &qaws_integrand;
    f.params = &params;

    double result = 0.0;
    double abserr = 0.0;
    const int status = gsl_integration_qaws(&f, 0.0, 1.0, table.get(), 0.0,
                                            1e-12, 2000, ws.get(), &result,
                                            &abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        std::ostringstream os;
        os << "rl_integral_quadrature: integration failed ("
           << gsl_strerror(status) << ")";
        throw convergence_error(os.str());
    }
    const double prefactor =
        term.kappa * std::pow(r, term.p + mu) / gamma_fn(mu);
    return prefactor * result;
}

double evaluate(const StructuredFunction& f, double r) {
    return evaluate_jet(f, r).f;
}

Jet2 evaluate_jet(const StructuredFunction& f, double r) {
    if (!(r > 0.0)) {
        throw domain_error("evaluate_jet: r must be positive");
    }
    if (f.f1f1 && f.terms.size() != 1) {
        throw domain_error(
            "evaluate_jet: confluent factor requires exactly one term");
    }
    Jet2 acc;
    for (const ExpPowerTerm& t : f.terms) {
        const double e = std::exp(t.c * r);
        const double rp = std::pow(r, t.p);
        const double u0 = t.kappa * e * rp;
        const double u1 = t.kappa * e * (t.c * rp + t.p * std::pow(r, t.p - 1.0));
        const double u2 =
            t.kappa * e *
            (t.c * t.c * rp + 2.0 * t.c * t.p * std::pow(r, t.p - 1.0) +
             t.p * (t.p - 1.0) * std::pow(r, t.p - 2.0));
        acc.f += u0;
        acc.df += u1;
        acc.d2f += u2;
    }
    if (f.f1f1) {
        const ConfluentFactor& h = *f.f1f1;
        const double z = h.scale * r;
        const double h0 = kummer_1f1(h.a, h.b, z);
        const double h1 = h.scale * (h.a / h.b) * kummer_1f1(h.a + 1.0, h.b + 1.0, z);
        const double h2 = h.scale * h.scale *
                          (h.a * (h.a + 1.0) / (h.b * (h.b + 1.0))) *
                          kummer_1f1(h.a + 2.0, h.b + 2.0, z);
        Jet2 out;
        out.f = acc.f * h0;
        out.df = acc.df * h0 + acc.f * h1;
        out.d2f = acc.d2f * h0 + 2.0 * acc.df * h1 + acc.f * h2;
        return out;
    }
    return acc;
}

}  // namespace nabla
