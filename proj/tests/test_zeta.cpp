#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "binzeta/zeta.hpp"

using namespace binzeta;

namespace {

/// P_s from t L'(t) = -L(t) * sum_{s>=1} P_s t^s, solved term by term.
std::vector<BigInt> power_sums_by_log_derivative(const LPolynomial& l, int s_max) {
    std::vector<BigInt> p(s_max + 1, 0);
    for (int s = 1; s <= s_max; ++s) {
        BigInt rhs = -BigInt(s) * l.coeff(s);
        for (int i = 1; i < s; ++i) rhs -= l.coeff(s - i) * p[i];
        p[s] = rhs;  // coefficient of L at 0 is 1
    }
    return p;
}

LPolynomial random_weil_like(std::mt19937_64& rng, int g, int q) {
    // Product of g quadratics 1 + a t + q t^2 with |a| <= 2 sqrt(q).
    LPolynomial l;
    const int amax = static_cast<int>(std::floor(2 * std::sqrt(static_cast<double>(q))));
    for (int i = 0; i < g; ++i) {
        const int a = static_cast<int>(rng() % (2 * amax + 1)) - amax;
        l = l * LPolynomial({1, a, q}, q);
    }
    return LPolynomial(l.coefficients(), q, g);
}

}  // namespace

TEST(Zeta, ConstructionAndPrinting) {
    EXPECT_THROW(LPolynomial({2, 1}), PreconditionError);
    const LPolynomial l{1, 0, 0, 0};
    EXPECT_EQ(l.degree(), 0);
    EXPECT_EQ(LPolynomial({1, -4, 0, 8}).to_string(), "8t^3 - 4t + 1");
    EXPECT_EQ(catalog_lpoly("L3prime").expanded().to_string(), "8t^6 - 4t^3 + 1");
}

TEST(Zeta, PowerSumsOfKloostermanCubic) {
    // 1 + t + 2t^2: P_1 = -1, P_2 = 1 - 4 = -3.
    const auto p = power_sums(catalog_lpoly("L2").expanded(), 5);
    EXPECT_EQ(p[1], -1);
    EXPECT_EQ(p[2], -3);
    EXPECT_EQ(predicted_count(catalog_lpoly("L2").expanded(), 1), 4);
    EXPECT_THROW(p[0], PreconditionError);
    EXPECT_THROW(p[6], PreconditionError);
}

TEST(Zeta, NewtonMatchesLogDerivativeProperty) {
    std::mt19937_64 rng(77);
    for (const auto& e : lpoly_catalog()) {
        const auto l = e.expanded();
        const auto ours = power_sums(l, 40);
        const auto ref = power_sums_by_log_derivative(l, 40);
        for (int s = 1; s <= 40; ++s) ASSERT_EQ(ours[s], ref[s]) << e.name << " s=" << s;
    }
    for (int trial = 0; trial < 20; ++trial) {
        const auto l = random_weil_like(rng, 1 + static_cast<int>(rng() % 6), 2);
        const auto ours = power_sums(l, 20);
        const auto ref = power_sums_by_log_derivative(l, 20);
        for (int s = 1; s <= 20; ++s) ASSERT_EQ(ours[s], ref[s]);
    }
}

TEST(Zeta, CatalogExpansions) {
    const auto l1 = catalog_lpoly("L1").expanded();
    EXPECT_EQ(l1.degree(), 62);
    EXPECT_EQ(l1.coeff(62), BigInt(1) << 31);
    EXPECT_TRUE(functional_equation_check(l1, 2, 31).holds);
    EXPECT_EQ(poly_divide_exact(l1, catalog_lpoly("L2").expanded()), catalog_lpoly("L1prime").expanded());
    EXPECT_EQ(poly_divide_exact(catalog_lpoly("L3").expanded(), catalog_lpoly("L4").expanded()),
              catalog_lpoly("L3prime").expanded());
    EXPECT_EQ(catalog_lpoly("L3").expanded().degree(), 10);
}

TEST(Zeta, FunctionalEquation) {
    for (const char* name : {"L1", "L2", "L3", "L4", "L1prime", "L3prime"}) {
        const auto& e = catalog_lpoly(name);
        EXPECT_TRUE(functional_equation_check(e.expanded(), 2, *e.genus).holds) << name;
    }
    const auto bad = functional_equation_check(LPolynomial{1, 1, 3}, 2, 1);
    EXPECT_FALSE(bad.holds);
    EXPECT_EQ(bad.first_bad_index, 0);
    EXPECT_FALSE(functional_equation_check(LPolynomial{1, 1, 2}, 2, 2).holds);
}

TEST(Zeta, ExactDivision) {
    EXPECT_EQ(poly_divide_exact(LPolynomial{1, 0, -1}, LPolynomial{1, 1}), (LPolynomial{1, -1}));
    EXPECT_THROW(poly_divide_exact(LPolynomial{1, 0, 1}, LPolynomial{1, 1}), InconsistencyError);
}

TEST(Zeta, ReconstructRoundTripProperty) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int g = 1 + static_cast<int>(rng() % 8);
        const int q = trial % 2 ? 2 : 4;
        const auto l = random_weil_like(rng, g, q);
        std::vector<std::int64_t> counts;
        for (int s = 1; s <= g; ++s) counts.push_back(predicted_count(l, s).convert_to<std::int64_t>());
        EXPECT_EQ(reconstruct_from_counts(counts, q, g), l) << l.to_string();
    }
    EXPECT_THROW(reconstruct_from_counts({1, 2}, 2, 9), PreconditionError);
    EXPECT_THROW(reconstruct_from_counts({3}, 2, 2), PreconditionError);
}

TEST(Zeta, ReconstructDetectsNonIntegralCoefficient) {
    // N_1 = 3, N_2 = 4 forces s_2 = -(P_2 + s_1 P_1)/2 with odd numerator.
    EXPECT_THROW(reconstruct_from_counts({3, 4}, 2, 2), InconsistencyError);
}

TEST(Zeta, DmVanishes) {
    const auto v = vanishing_residue_check(catalog_lpoly("L1prime").expanded(), 3, 200);
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(v.coefficients_vanish);
    const auto w = vanishing_residue_check(catalog_lpoly("L2").expanded(), 3, 10);
    EXPECT_FALSE(w.holds);
    EXPECT_EQ(w.first_failure, 1);
}

TEST(Zeta, SingularCorrectionSums) {
    for (int s = 1; s <= 50; ++s) EXPECT_EQ(singular_correction_sums(s), s % 3 == 0 ? 8 : 2) << "s=" << s;
}

TEST(Zeta, RootModuliAreSqrtQ) {
    for (const char* name : {"L2", "L3", "L4", "L3prime"}) {
        for (double r : reciprocal_root_moduli(catalog_lpoly(name).expanded()))
            EXPECT_NEAR(r, std::sqrt(2.0), 1e-6) << name;
        EXPECT_TRUE(weil_bound_holds(catalog_lpoly(name).expanded(), 30)) << name;
    }
    EXPECT_FALSE(weil_bound_holds(LPolynomial{1, 5, 2}, 3));
}

TEST(Zeta, FactorFileRoundTrip) {
    for (const auto& e : lpoly_catalog()) {
        std::stringstream io;
        write_lpoly_factors(io, e.factors, e.description);
        const auto back = parse_lpoly_factors(io);
        EXPECT_EQ(product(back), e.expanded()) << e.name;
    }
    std::istringstream bad("1 x 2\n");
    EXPECT_THROW(parse_lpoly_factors(bad), ParseError);
    std::istringstream nonmonic("3 1\n");
    EXPECT_THROW(parse_lpoly_factors(nonmonic), ParseError);
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(parse_lpoly_factors(empty), ParseError);
}
