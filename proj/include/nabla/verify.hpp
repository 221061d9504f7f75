#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nabla/schrodinger.hpp"

namespace nabla {

struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> residuals;
    double scale = 0.0;
    double relative_max = 0.0;
};

// Default verification grid; every example solution is singular at r = 0.
std::vector<double> default_grid();

// Residual of r^2 R'' - (alpha^2 r^2 - beta r + gamma r^{rho+2} + delta) R
// over the grid, with exact structured second derivatives (no finite
// differences). scale is the max of |r^2 R''| and |poly * R| over the grid.
ResidualReport ode_residual(const EquationParams& ep, const SolutionRecord& sr,
                            const std::vector<double>& grid);

struct EquivalenceReport {
    bool agree = false;
    double max_deviation = 0.0;
};

// Re-evaluates the record's fractional form independently (quadrature for
// negative orders, exact differentiation for nonnegative integer orders)
// and compares pointwise against the closed form.
EquivalenceReport representation_equivalence(const SolutionRecord& sr,
                                             const std::vector<double>& grid,
                                             double tol);

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    bool all_pass() const;
};

// One trial produces one or more (lhs, rhs) pairs to compare.
using IdentityFn =
    std::function<std::vector<std::pair<double, double>>(std::mt19937_64&)>;

// Generic randomized-identity runner; exposed so tests can feed it broken
// implementations and watch it fail. Error metric per pair is
// |lhs - rhs| / max(1, |lhs|, |rhs|).
CheckResult run_identity_check(const std::string& name, double tolerance,
                               std::int64_t trials, std::uint64_t seed,
                               const IdentityFn& fn);

// The randomized identity suite over the discrete operators: monomial
// derivative, sum composition/commutation, linearity, order lowering,
// initial-term interchange (base 1), power rule, shifted-base identity,
// product expansion, integer collapse.
SuiteReport identity_suite(std::uint64_t seed, std::int64_t trials);

// Built-in end-to-end scenarios 1..3 (the reference equations shipped with
// the tool). residual_tol/equiv_tol default to 1e-8 / 1e-6.
SuiteReport run_builtin_example(int n, double residual_tol, double equiv_tol);

// Checks for a user-supplied solution document against its own equation.
SuiteReport verify_solution_record(const SolutionRecord& sr,
                                   const std::vector<double>& grid,
                                   double residual_tol, double equiv_tol);

}  // namespace nabla
