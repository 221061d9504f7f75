#pragma once

#include <cstdint>
#include <string>

#include "nabla/rl_ops.hpp"

namespace nabla {

// Physical data for the radial equation with potential
// V(r) = a/r^2 - b/r + c r^{rho}.
struct PhysicalParams {
    double m = 1.0;
    double hbar = 1.0;
    double epsilon = -1.0;
    double a_pot = 0.0;
    double b_pot = 0.0;
    double c_pot = 0.0;
    std::int64_t ell = 0;
    int rho = 0;
};

// Coefficients of r^2 R'' - (alpha^2 r^2 - beta r + gamma r^{rho+2} + delta) R = 0.
struct EquationParams {
    double alpha_sq = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    int rho = 0;
};

// delta itself for rho in {0, -1}, gamma + delta for rho = -2.
double effective_delta(const EquationParams& ep);

// Throws domain_error when the invariants fail (complex tau or nonpositive
// squared rate).
void validate(const EquationParams& ep);

struct BranchDerivation {
    EquationParams equation;
    double tau = 0.0;
    double rate = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double const_a = 0.0;
    double const_b = 0.0;
    double const_c = 0.0;
    double const_d = 0.0;
    double order_I = 0.0;
    double order_II = 0.0;
    double order_III = 0.0;
    double order_IV = 0.0;
};

enum class Branch { I, II, III, IV };

Branch branch_from_string(const std::string& s);
std::string to_string(Branch b);

// Printed shape prefactor * [operand]_{order}; prefactor and operand both
// carry unit coefficients (arbitrary constant normalized to 1).
struct FractionalForm {
    ExpPowerTerm prefactor;
    ExpPowerTerm operand;
    double order = 0.0;
};

struct SolutionRecord {
    EquationParams equation;
    BranchDerivation derivation;
    Branch branch = Branch::I;
    std::string arbitrary_constant_symbol = "A";
    // The evaluable representation actually used to build closed_form. When
    // rewrite_applied is true this is the power-swapped form of the literal
    // shape, which is kept as display metadata below.
    FractionalForm fractional_form;
    bool rewrite_applied = false;
    FractionalForm literal_form;
    // Operator-valued order display, e.g. "-(1 + a E^-1)"; scalar-evaluated
    // everywhere, kept for reference only.
    std::string order_display;
    StructuredFunction closed_form;
};

// alpha_sq = -2 m epsilon / hbar^2, beta = 2 m b / hbar^2,
// gamma = 2 m c / hbar^2, delta = 2 m a / hbar^2 + ell(ell+1).
EquationParams map_physical(const PhysicalParams& pp);

// Compatibility constructor for the published-rate reading: eta is taken as
// the exponential rate itself and alpha_sq is reconstructed so the r^2
// coefficient becomes eta^2 (i.e. alpha_sq = eta^2 - gamma for rho = 0 and
// eta^2 otherwise).
EquationParams equation_from_rate(double eta, double beta, double gamma,
                                  double delta, int rho);

BranchDerivation derive_branches(const EquationParams& ep);

SolutionRecord construct_solution(const BranchDerivation& bd, Branch branch);

// Closed-form value at r > 0 with the arbitrary constant set to 1.
double evaluate_solution(const SolutionRecord& sr, double r);

}  // namespace nabla
