#include "nabla/schrodinger.hpp"

#include <cmath>
#include <sstream>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

// Branch constants are rationals assembled from square roots; snap values
// that sit within rounding distance of an integer so the integer-order
// (exact differentiation) route is taken whenever it applies.
double snap_integer(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) {
        return r;
    }
    return x;
}

bool is_nonnegative_integer(double x) {
    return x >= 0.0 && x == std::floor(x);
}

struct BranchInputs {
    double sigma = 0.0;    // exponential rate with sign
    double lambda = 0.0;   // prefactor power
    double constant = 0.0; // a, b, c or d
    const char* symbol = "A";
};

BranchInputs branch_inputs(const BranchDerivation& bd, Branch branch) {
    switch (branch) {
        case Branch::I:
            return {bd.rate, bd.lambda_plus, bd.const_a, "A"};
        case Branch::II:
            return {-bd.rate, bd.lambda_plus, bd.const_b, "B"};
        case Branch::III:
            return {bd.rate, bd.lambda_minus, bd.const_c, "C"};
        case Branch::IV:
            return {-bd.rate, bd.lambda_minus, bd.const_d, "D"};
    }
    throw domain_error("branch_inputs: unknown branch");
}

StructuredFunction assemble(const FractionalForm& form) {
    StructuredFunction f = rl_apply(form.operand, form.order);
    for (ExpPowerTerm& t : f.terms) {
        t.kappa *= form.prefactor.kappa;
        t.c += form.prefactor.c;
        t.p += form.prefactor.p;
    }
    return f;
}

std::string constant_name(Branch branch) {
    switch (branch) {
        case Branch::I:
            return "a";
        case Branch::II:
            return "b";
        case Branch::III:
            return "c";
        case Branch::IV:
            return "d";
    }
    return "?";
}

}  // namespace

double effective_delta(const EquationParams& ep) {
    return ep.rho == -2 ? ep.gamma + ep.delta : ep.delta;
}

void validate(const EquationParams& ep) {
    if (ep.rho != 0 && ep.rho != -1 && ep.rho != -2) {
        std::ostringstream os;
        os << "EquationParams: rho = " << ep.rho << " not in {0, -1, -2}";
        throw domain_error(os.str());
    }
    if (1.0 + 4.0 * effective_delta(ep) < 0.0) {
        throw domain_error(
            "EquationParams: 1 + 4*(effective delta) < 0 gives complex tau");
    }
    const double rate_sq = ep.rho == 0 ? ep.alpha_sq + ep.gamma : ep.alpha_sq;
    if (!(rate_sq > 0.0)) {
        std::ostringstream os;
        os << "EquationParams: squared exponential rate "
           << (ep.rho == 0 ? "alpha_sq + gamma" : "alpha_sq") << " = "
           << rate_sq << " must be positive";
        throw domain_error(os.str());
    }
}

Branch branch_from_string(const std::string& s) {
    if (s == "I") return Branch::I;
    if (s == "II") return Branch::II;
    if (s == "III") return Branch::III;
    if (s == "IV") return Branch::IV;
    throw usage_error("branch must be one of I, II, III, IV");
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::I:
            return "I";
        case Branch::II:
            return "II";
        case Branch::III:
            return "III";
        case Branch::IV:
            return "IV";
    }
    return "?";
}

EquationParams map_physical(const PhysicalParams& pp) {
    if (!(pp.m > 0.0) || !(pp.hbar > 0.0)) {
        throw domain_error("map_physical: m and hbar must be positive");
    }
    if (pp.a_pot < 0.0 || pp.b_pot < 0.0 || pp.c_pot < 0.0) {
        throw domain_error("map_physical: potential strengths must be >= 0");
    }
    if (pp.ell < 0) {
        throw domain_error("map_physical: ell must be a nonnegative integer");
    }
    const double two_m = 2.0 * pp.m / (pp.hbar * pp.hbar);
    EquationParams ep;
    ep.alpha_sq = -two_m * pp.epsilon;
    ep.beta = two_m * pp.b_pot;
    ep.gamma = two_m * pp.c_pot;
    ep.delta = two_m * pp.a_pot +
               static_cast<double>(pp.ell) * static_cast<double>(pp.ell + 1);
    ep.rho = pp.rho;
    validate(ep);
    return ep;
}

EquationParams equation_from_rate(double eta, double beta, double gamma,
                                  double delta, int rho) {
    if (!(eta > 0.0)) {
        throw domain_error("equation_from_rate: eta must be positive");
    }
    EquationParams ep;
    ep.alpha_sq = rho == 0 ? eta * eta - gamma : eta * eta;
    ep.beta = beta;
    ep.gamma = gamma;
    ep.delta = delta;
    ep.rho = rho;
    validate(ep);
    return ep;
}

BranchDerivation derive_branches(const EquationParams& ep) {
    validate(ep);
    BranchDerivation bd;
    bd.equation = ep;
    bd.tau = std::sqrt(1.0 + 4.0 * effective_delta(ep));
    bd.rate = ep.rho == 0 ? std::sqrt(ep.alpha_sq + ep.gamma)
                          : std::sqrt(ep.alpha_sq);
    bd.lambda_plus = (1.0 + bd.tau) / 2.0;
    bd.lambda_minus = (1.0 - bd.tau) / 2.0;
    const double num = ep.rho == -1 ? ep.beta - ep.gamma : ep.beta;
    bd.const_a = -((num + bd.rate * (1.0 + bd.tau)) / (2.0 * bd.rate));
    bd.const_b = (num - bd.rate * (1.0 + bd.tau)) / (2.0 * bd.rate);
    bd.const_c = -((num + bd.rate * (1.0 - bd.tau)) / (2.0 * bd.rate));
    bd.const_d = (num - bd.rate * (1.0 - bd.tau)) / (2.0 * bd.rate);
    bd.order_I = snap_integer(-(1.0 + bd.const_a));
    bd.order_II = snap_integer(-(1.0 + bd.const_b));
    bd.order_III = snap_integer(-(1.0 + bd.const_c));
    bd.order_IV = snap_integer(-(1.0 + bd.const_d));
    return bd;
}

SolutionRecord construct_solution(const BranchDerivation& bd, Branch branch) {
    const BranchInputs in = branch_inputs(bd, branch);
    const double order = snap_integer(-(1.0 + in.constant));
    const double q = snap_integer(-(2.0 * in.lambda + in.constant));

    SolutionRecord sr;
    sr.equation = bd.equation;
    sr.derivation = bd;
    sr.branch = branch;
    sr.arbitrary_constant_symbol = in.symbol;
    sr.literal_form.prefactor = {1.0, in.sigma, in.lambda};
    sr.literal_form.operand = {1.0, -2.0 * in.sigma, q};
    sr.literal_form.order = order;
    {
        std::ostringstream os;
        os << "-(1 + " << constant_name(branch) << " E^-1)";
        sr.order_display = os.str();
    }

    const bool lambda_minus_family =
        branch == Branch::III || branch == Branch::IV;
    if (lambda_minus_family && !is_nonnegative_integer(order)) {
        std::ostringstream os;
        os << "construct_solution: branch " << to_string(branch)
           << " has order " << order
           << " outside the nonnegative integers; its confluent normal form "
              "needs denominator parameter 1-tau = "
           << 1.0 - bd.tau
           << ", so only nonnegative integer orders are constructible. The "
              "equivalent fractional representation is available as branch "
           << (branch == Branch::III ? "I" : "II") << " after rewriting.";
        throw unavailable_error(os.str());
    }

    std::string literal_diagnostic;
    try {
        sr.fractional_form = sr.literal_form;
        sr.closed_form = assemble(sr.fractional_form);
        return sr;
    } catch (const error& e) {
        literal_diagnostic = e.what();
    }

    // The power-swap manipulation: exchange operand power and order, and
    // move the prefactor to the partner exponent lambda -/+ tau. For branch
    // I this lands on the literal branch III shape (and II on IV), whose
    // confluent parameter 1+tau is always safe.
    const double partner_lambda =
        snap_integer(in.lambda - (branch == Branch::I || branch == Branch::II
                                      ? bd.tau
                                      : -bd.tau));
    FractionalForm swapped;
    swapped.prefactor = {1.0, in.sigma, partner_lambda};
    swapped.operand = {1.0, -2.0 * in.sigma, order};
    swapped.order = q;
    try {
        sr.fractional_form = swapped;
        sr.closed_form = assemble(sr.fractional_form);
        sr.rewrite_applied = true;
        return sr;
    } catch (const error& e) {
        std::ostringstream os;
        os << "construct_solution: branch " << to_string(branch)
           << " unavailable. Literal form failed: " << literal_diagnostic
           << " Rewritten form failed: " << e.what();
        throw unavailable_error(os.str());
    }
}

double evaluate_solution(const SolutionRecord& sr, double r) {
    return evaluate(sr.closed_form, r);
}

}  // namespace nabla
