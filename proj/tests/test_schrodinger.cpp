#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "nabla/errors.hpp"
#include "nabla/schrodinger.hpp"
#include "nabla/special_functions.hpp"

using namespace nabla;

namespace {

constexpr double kEInv = 0.3678794411714423215955238;

bool mentions(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("map_physical reference mappings") {
    {
        const PhysicalParams pp{0.5, 1.0, -1.0, 0.0, 0.0, 2.0, 1, -1};
        const EquationParams ep = map_physical(pp);
        CHECK(ep.alpha_sq == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ep.beta == 0.0);
        CHECK(ep.gamma == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(ep.delta == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(ep.rho == -1);
    }
    {
        const PhysicalParams pp{0.5, 1.0, -1.0, 0.0, 2.0, 0.0, 1, 0};
        const EquationParams ep = map_physical(pp);
        CHECK(ep.alpha_sq == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ep.beta == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(ep.gamma == 0.0);
        CHECK(ep.delta == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(ep.rho == 0);
    }
    {
        PhysicalParams pp;
        pp.epsilon = -0.5;
        const EquationParams ep = map_physical(pp);
        CHECK(ep.alpha_sq == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ep.beta == 0.0);
        CHECK(ep.gamma == 0.0);
        CHECK(ep.delta == 0.0);
    }

    PhysicalParams bad;
    bad.m = 0.0;
    CHECK_THROWS_AS(map_physical(bad), domain_error);
    bad = PhysicalParams{};
    bad.hbar = -1.0;
    CHECK_THROWS_AS(map_physical(bad), domain_error);
    bad = PhysicalParams{};
    bad.b_pot = -0.1;
    CHECK_THROWS_AS(map_physical(bad), domain_error);
    bad = PhysicalParams{};
    bad.ell = -1;
    CHECK_THROWS_AS(map_physical(bad), domain_error);
    bad = PhysicalParams{};
    bad.epsilon = 1.0;  // alpha_sq = -2 < 0 and gamma = 0: rate_sq <= 0
    CHECK_THROWS_AS(map_physical(bad), domain_error);
}

TEST_CASE("equation_from_rate reconstructs alpha_sq") {
    const EquationParams ep = equation_from_rate(5.0, 2.0, 0.0, 2.0, 0);
    CHECK(ep.alpha_sq == doctest::Approx(25.0).epsilon(1e-15));
    CHECK(ep.beta == 2.0);
    CHECK(ep.rho == 0);

    // With rho = 0 the stored alpha_sq absorbs gamma.
    const EquationParams eq2 = equation_from_rate(2.0, 0.0, 3.0, 0.0, 0);
    CHECK(eq2.alpha_sq == doctest::Approx(1.0).epsilon(1e-15));
    const BranchDerivation bd = derive_branches(eq2);
    CHECK(bd.rate == doctest::Approx(2.0).epsilon(1e-15));

    const EquationParams eq3 = equation_from_rate(2.0, 0.0, 3.0, 0.0, -1);
    CHECK(eq3.alpha_sq == doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(equation_from_rate(0.0, 1.0, 0.0, 0.0, 0), domain_error);
    CHECK_THROWS_AS(equation_from_rate(-2.0, 1.0, 0.0, 0.0, 0), domain_error);
}

TEST_CASE("validate rejects out-of-family parameters") {
    EquationParams ep{1.0, 0.0, 0.0, 0.0, 1};
    CHECK_THROWS_AS(validate(ep), domain_error);
    ep = {1.0, 0.0, 0.0, 0.0, 2};
    CHECK_THROWS_AS(validate(ep), domain_error);

    ep = {1.0, 0.0, 0.0, -0.5, 0};
    CHECK_THROWS_AS(validate(ep), domain_error);
    ep = {1.0, 0.0, -1.0, 0.5, -2};  // gamma + delta = -0.5
    CHECK_THROWS_AS(validate(ep), domain_error);

    ep = {-2.0, 0.0, 1.0, 0.0, 0};  // alpha_sq + gamma = -1
    CHECK_THROWS_AS(validate(ep), domain_error);
    ep = {0.0, 0.0, 2.0, 0.0, -1};  // rate_sq = alpha_sq = 0
    CHECK_THROWS_AS(validate(ep), domain_error);
    ep = {-2.0, 0.0, 5.0, 0.0, -2};
    CHECK_THROWS_AS(validate(ep), domain_error);

    CHECK_NOTHROW(validate(EquationParams{1.0, 0.0, 2.0, 2.0, -1}));
}

TEST_CASE("effective_delta folds gamma only for rho = -2") {
    CHECK(effective_delta(EquationParams{1.0, 0.0, 4.0, 2.0, 0}) == 2.0);
    CHECK(effective_delta(EquationParams{1.0, 0.0, 4.0, 2.0, -1}) == 2.0);
    CHECK(effective_delta(EquationParams{1.0, 0.0, 4.0, 2.0, -2}) == 6.0);
}

TEST_CASE("derive_branches reference values") {
    {
        const BranchDerivation bd =
            derive_branches(equation_from_rate(5.0, 2.0, 0.0, 2.0, 0));
        CHECK(bd.tau == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(bd.rate == doctest::Approx(5.0).epsilon(1e-15));
        CHECK(bd.lambda_plus == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(bd.lambda_minus == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(bd.const_a == doctest::Approx(-2.2).epsilon(1e-15));
        CHECK(bd.const_b == doctest::Approx(-1.8).epsilon(1e-15));
        CHECK(bd.const_c == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(bd.const_d == doctest::Approx(1.2).epsilon(1e-15));
        CHECK(bd.order_I == doctest::Approx(1.2).epsilon(1e-15));
        CHECK(bd.order_II == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(bd.order_III == doctest::Approx(-1.8).epsilon(1e-15));
        CHECK(bd.order_IV == doctest::Approx(-2.2).epsilon(1e-15));
    }
    {
        const BranchDerivation bd =
            derive_branches(EquationParams{1.0, 0.0, 2.0, 2.0, -1});
        CHECK(bd.tau == 3.0);
        CHECK(bd.rate == 1.0);
        CHECK(bd.const_a == -1.0);
        CHECK(bd.const_b == -3.0);
        CHECK(bd.const_c == 2.0);
        CHECK(bd.const_d == 0.0);
        CHECK(bd.order_I == 0.0);
        CHECK(bd.order_II == 2.0);
        CHECK(bd.order_III == -3.0);
        CHECK(bd.order_IV == -1.0);
    }
    {
        const BranchDerivation bd =
            derive_branches(EquationParams{1.0, 2.0, 4.0, 2.0, -2});
        CHECK(bd.tau == 5.0);
        CHECK(bd.rate == 1.0);
        CHECK(bd.const_a == -4.0);
        CHECK(bd.const_b == -2.0);
        CHECK(bd.const_c == 1.0);
        CHECK(bd.const_d == 3.0);
        CHECK(bd.order_I == 3.0);
        CHECK(bd.order_II == 1.0);
        CHECK(bd.order_III == -2.0);
        CHECK(bd.order_IV == -4.0);
    }
}

TEST_CASE("derivation constants satisfy the branch algebra") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ad(0.1, 10.0);
    std::uniform_real_distribution<double> bdist(-5.0, 5.0);
    std::uniform_real_distribution<double> gd(0.0, 3.0);
    std::uniform_real_distribution<double> dd(-0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        EquationParams ep;
        ep.alpha_sq = ad(rng);
        ep.beta = bdist(rng);
        ep.gamma = gd(rng);
        ep.delta = dd(rng);
        ep.rho = -(trial % 3);
        if (1.0 + 4.0 * effective_delta(ep) <= 0.0) {
            continue;
        }
        const BranchDerivation bd = derive_branches(ep);
        const double num = ep.rho == -1 ? ep.beta - ep.gamma : ep.beta;
        CHECK(bd.lambda_plus + bd.lambda_minus ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(bd.lambda_plus * bd.lambda_minus ==
              doctest::Approx(-effective_delta(ep)).epsilon(1e-10));
        CHECK(bd.const_c - bd.const_a == doctest::Approx(bd.tau).epsilon(1e-10));
        CHECK(bd.const_d - bd.const_b == doctest::Approx(bd.tau).epsilon(1e-10));
        CHECK(bd.const_a + bd.const_b ==
              doctest::Approx(-(1.0 + bd.tau)).epsilon(1e-10));
        CHECK(bd.const_c + bd.const_d ==
              doctest::Approx(-(1.0 - bd.tau)).epsilon(1e-10));
        CHECK(bd.const_a + bd.const_c ==
              doctest::Approx(-num / bd.rate - 1.0).epsilon(1e-10));
        CHECK(bd.const_b + bd.const_d ==
              doctest::Approx(num / bd.rate - 1.0).epsilon(1e-10));
        CHECK(bd.order_I == doctest::Approx(-(1.0 + bd.const_a)).epsilon(1e-12));
        CHECK(bd.order_IV == doctest::Approx(-(1.0 + bd.const_d)).epsilon(1e-12));
    }
}

TEST_CASE("construct_solution literal integer orders") {
    const BranchDerivation bd =
        derive_branches(EquationParams{1.0, 0.0, 2.0, 2.0, -1});

    const SolutionRecord s1 = construct_solution(bd, Branch::I);
    CHECK_FALSE(s1.rewrite_applied);
    CHECK(s1.arbitrary_constant_symbol == "A");
    CHECK(s1.fractional_form.order == 0.0);
    CHECK(s1.fractional_form.operand.p == -3.0);
    CHECK(s1.fractional_form.prefactor.c == 1.0);
    CHECK(s1.fractional_form.prefactor.p == 2.0);
    REQUIRE(s1.closed_form.terms.size() == 1);
    CHECK(s1.closed_form.terms[0].kappa == doctest::Approx(1.0));
    CHECK(s1.closed_form.terms[0].c == doctest::Approx(-1.0));
    CHECK(s1.closed_form.terms[0].p == doctest::Approx(-1.0));
    CHECK(s1.order_display == "-(1 + a E^-1)");

    const SolutionRecord s2 = construct_solution(bd, Branch::II);
    CHECK_FALSE(s2.rewrite_applied);
    CHECK(s2.arbitrary_constant_symbol == "B");
    CHECK(s2.fractional_form.order == 2.0);
    REQUIRE(s2.closed_form.terms.size() == 3);
    // Proportional to e^r(2 r^{-1} - 4 + 4 r): ratio 2 against the
    // normalized target (1, -2, 2) at powers (-1, 0, 1).
    double km1 = 0.0, k0 = 0.0, k1 = 0.0;
    for (const ExpPowerTerm& t : s2.closed_form.terms) {
        CHECK(t.c == doctest::Approx(1.0));
        if (t.p == -1.0) km1 = t.kappa;
        if (t.p == 0.0) k0 = t.kappa;
        if (t.p == 1.0) k1 = t.kappa;
    }
    CHECK(k0 / km1 == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(k1 / km1 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("construct_solution rewrites fractional orders") {
    const BranchDerivation bd =
        derive_branches(equation_from_rate(5.0, 2.0, 0.0, 2.0, 0));

    const SolutionRecord s1 = construct_solution(bd, Branch::I);
    CHECK(s1.rewrite_applied);
    CHECK(s1.literal_form.order == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(s1.literal_form.operand.p == doctest::Approx(-1.8).epsilon(1e-15));
    CHECK(s1.literal_form.prefactor.p == 2.0);
    CHECK(s1.fractional_form.order == doctest::Approx(-1.8).epsilon(1e-15));
    CHECK(s1.fractional_form.operand.p == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(s1.fractional_form.prefactor.p == doctest::Approx(-1.0));
    CHECK(s1.fractional_form.prefactor.c == 5.0);
    CHECK(s1.fractional_form.operand.c == -10.0);
    REQUIRE(s1.closed_form.f1f1.has_value());
    CHECK(s1.closed_form.f1f1->a == doctest::Approx(2.2).epsilon(1e-14));
    CHECK(s1.closed_form.f1f1->b == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(s1.closed_form.f1f1->scale == doctest::Approx(-10.0));
    REQUIRE(s1.closed_form.terms.size() == 1);
    CHECK(s1.closed_form.terms[0].c == doctest::Approx(5.0));
    CHECK(s1.closed_form.terms[0].p == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s1.closed_form.terms[0].kappa ==
          doctest::Approx(0.1836337484799521221281903).epsilon(5e-6));
    CHECK(s1.closed_form.terms[0].kappa ==
          doctest::Approx(gamma_ratio(2.2, 4.0)).epsilon(1e-12));

    const SolutionRecord s2 = construct_solution(bd, Branch::II);
    CHECK(s2.rewrite_applied);
    REQUIRE(s2.closed_form.f1f1.has_value());
    CHECK(s2.closed_form.f1f1->a == doctest::Approx(1.8).epsilon(1e-14));
    CHECK(s2.closed_form.f1f1->b == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(s2.closed_form.f1f1->scale == doctest::Approx(10.0));
    CHECK(s2.closed_form.terms[0].c == doctest::Approx(-5.0));
    CHECK(s2.closed_form.terms[0].p == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2.closed_form.terms[0].kappa ==
          doctest::Approx(0.1552306284967071164848428).epsilon(5e-6));
    CHECK(s2.closed_form.terms[0].kappa ==
          doctest::Approx(gamma_ratio(1.8, 4.0)).epsilon(1e-12));
}

TEST_CASE("branches III and IV require nonnegative integer orders") {
    const EquationParams examples[] = {
        equation_from_rate(5.0, 2.0, 0.0, 2.0, 0),
        {1.0, 0.0, 2.0, 2.0, -1},
        {1.0, 2.0, 4.0, 2.0, -2},
    };
    for (const EquationParams& ep : examples) {
        const BranchDerivation bd = derive_branches(ep);
        for (Branch b : {Branch::III, Branch::IV}) {
            try {
                construct_solution(bd, b);
                FAIL("expected unavailable_error for branch ",
                     to_string(b));
            } catch (const unavailable_error& e) {
                CHECK(mentions(e, "1-tau"));
                CHECK(mentions(e, b == Branch::III ? "branch I" : "branch II"));
            }
        }
    }
}

TEST_CASE("branch III constructs when its order is a nonnegative integer") {
    const BranchDerivation bd =
        derive_branches(EquationParams{1.0, 4.0, 0.0, 0.0, -1});
    CHECK(bd.tau == 1.0);
    CHECK(bd.const_c == -2.0);
    CHECK(bd.order_III == 1.0);

    const SolutionRecord s3 = construct_solution(bd, Branch::III);
    CHECK_FALSE(s3.rewrite_applied);
    CHECK(s3.arbitrary_constant_symbol == "C");
    CHECK(s3.fractional_form.order == 1.0);
    CHECK(s3.fractional_form.prefactor.p == bd.lambda_minus);

    CHECK(bd.order_IV == -3.0);
    CHECK_THROWS_AS(construct_solution(bd, Branch::IV), unavailable_error);
}

TEST_CASE("evaluate_solution reference points") {
    const BranchDerivation ex2 =
        derive_branches(EquationParams{1.0, 0.0, 2.0, 2.0, -1});
    const SolutionRecord s = construct_solution(ex2, Branch::I);
    CHECK(evaluate_solution(s, 1.0) == doctest::Approx(kEInv).epsilon(1e-15));
    CHECK_THROWS_AS(evaluate_solution(s, 0.0), domain_error);
    CHECK_THROWS_AS(evaluate_solution(s, -2.0), domain_error);

    const BranchDerivation ex3 =
        derive_branches(EquationParams{1.0, 2.0, 4.0, 2.0, -2});
    const SolutionRecord s32 = construct_solution(ex3, Branch::II);
    CHECK(evaluate_solution(s32, 2.0) == 0.0);

    const BranchDerivation ex1 =
        derive_branches(equation_from_rate(5.0, 2.0, 0.0, 2.0, 0));
    const SolutionRecord s11 = construct_solution(ex1, Branch::I);
    const SolutionRecord s12 = construct_solution(ex1, Branch::II);
    CHECK(evaluate_solution(s11, 0.5) ==
          doctest::Approx(0.065201111979317696382).epsilon(1e-10));
    CHECK(evaluate_solution(s11, 1.0) ==
          doctest::Approx(0.90504509517181497234).epsilon(1e-10));
    CHECK(evaluate_solution(s12, 0.5) ==
          doctest::Approx(0.055116282682312232208).epsilon(1e-10));
    CHECK(evaluate_solution(s12, 1.0) ==
          doctest::Approx(0.76505936465551571679).epsilon(1e-10));

    // r -> 0+: value ~ kappa r^2.
    const double r = 1e-6;
    CHECK(evaluate_solution(s11, r) / (r * r) ==
          doctest::Approx(s11.closed_form.terms[0].kappa).epsilon(1e-4));
}

TEST_CASE("branch names round trip") {
    for (Branch b : {Branch::I, Branch::II, Branch::III, Branch::IV}) {
        CHECK(branch_from_string(to_string(b)) == b);
    }
    CHECK(to_string(Branch::III) == "III");
    CHECK_THROWS_AS(branch_from_string("V"), usage_error);
    CHECK_THROWS_AS(branch_from_string("i"), usage_error);
}
