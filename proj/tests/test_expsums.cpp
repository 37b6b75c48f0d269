#include <gtest/gtest.h>

#include "binzeta/expsums.hpp"
#include "oracle.hpp"

using namespace binzeta;

// Values cross-checked against the bitwise oracle over the reciprocal basis.
TEST(ExpSums, KloostermanFrozen) {
    EXPECT_EQ(kloosterman(Field::standard(3)).value, -5);
    EXPECT_EQ(kloosterman(Field::standard(5)).value, 11);
    EXPECT_EQ(kloosterman(Field::standard(7)).value, -13);
    EXPECT_EQ(kloosterman(Field::standard(11)).value, 67);
}

TEST(ExpSums, GSumFrozen) {
    EXPECT_EQ(g_sum(Field::standard(7), 1).value, -41);
    EXPECT_EQ(g_sum(Field::standard(11), 1).value, 23);
}

TEST(ExpSums, KPrimeFrozenAtDegenerateDegrees) {
    EXPECT_EQ(k_prime(Field::standard(6), 3).value, 3);
    EXPECT_EQ(k_prime(Field::standard(9), 3).value, -509);
    EXPECT_EQ(k_prime(Field::standard(12), 3).value, -13);
    for (int m : {3, 6, 9, 12}) EXPECT_EQ(k_prime(Field::standard(m), 3).degenerate_count, 6) << "m=" << m;
}

TEST(ExpSums, AgreeWithOracleInAnotherBasis) {
    for (int m = 2; m <= 11; ++m) {
        const Field& f = Field::standard(m);
        const auto g = oracle::field(m, kPrimitivePolynomials[m]);
        EXPECT_EQ(kloosterman(f).value, oracle::kloosterman(g)) << "m=" << m;
        for (int k = 1; k <= 3; ++k) {
            EXPECT_EQ(g_sum(f, k).value, oracle::g_sum(g, k)) << "m=" << m << " k=" << k;
            EXPECT_EQ(c_sum(f, k).value, oracle::c_sum(g, k)) << "m=" << m << " k=" << k;
            EXPECT_EQ(k_prime(f, k).value, oracle::k_prime(g, k)) << "m=" << m << " k=" << k;
        }
    }
}

TEST(ExpSums, ReportBookkeeping) {
    const auto r = c_sum(Field::standard(5), 1);
    EXPECT_EQ(r.domain_size, 32);
    EXPECT_EQ(r.value, 2 * r.trace_zero_count - r.domain_size);
    EXPECT_EQ(r.name, "C");
    const auto k = kloosterman(Field::standard(5));
    EXPECT_EQ(k.domain_size, 31);
    EXPECT_FALSE(k.k.has_value());
}

TEST(ExpSums, SumsAreCongruentProperty) {
    // K_m + 1 is divisible by 4 for m >= 3 (a classical fact about Kloosterman sums).
    for (int m = 3; m <= 16; ++m) EXPECT_EQ((kloosterman(Field::standard(m)).value + 1) % 4, 0) << "m=" << m;
    // Every sum has the parity of its domain size.
    for (int m = 1; m <= 14; ++m) {
        const Field& f = Field::standard(m);
        for (int k = 1; k <= 4; ++k) {
            EXPECT_EQ((g_sum(f, k).value - static_cast<std::int64_t>(f.order())) % 2, 0);
            EXPECT_EQ(c_sum(f, k).value % 2, 0);
        }
    }
}

TEST(ExpSums, CClosedForm) {
    EXPECT_EQ(c_closed_form(7), 16);
    EXPECT_EQ(c_closed_form(5), -8);
    EXPECT_EQ(c_closed_form(3), -4);
    EXPECT_EQ(c_closed_form(9), 32);
    EXPECT_FALSE(c_closed_form(8).has_value());
    for (int m = 1; m <= 15; m += 2)
        for (int k = 1; k <= 5; ++k)
            if (std::gcd(k, m) == 1) EXPECT_EQ(c_sum(Field::standard(m), k).value, *c_closed_form(m));
}

TEST(ExpSums, FMapSpecialPoints) {
    const Field& f = Field::standard(7);
    EXPECT_EQ(f_map(f, Element{0}, 3).bits, 0u);
    EXPECT_EQ(f_map(f, Element{1}, 3).bits, 0u);
    // Denominator vanishes at v = alpha^9 in GF(2^6) for k = 3 (v^8 = v).
    const Field& g = Field::standard(6);
    EXPECT_THROW(f_map(g, g.generator_power(9), 3), DomainError);
    EXPECT_THROW(k_prime(g, 3, DegeneratePolicy::reject), DomainError);
    EXPECT_THROW(f_map(f, Element{3}, 0), PreconditionError);
}

TEST(ExpSums, KPrimeRejectPolicyMatchesWhenCoprime) {
    const Field& f = Field::standard(8);
    EXPECT_EQ(k_prime(f, 3, DegeneratePolicy::reject).value, k_prime(f, 3).value);
}

TEST(ExpSums, ConjecturesAtK3) {
    for (int m : {4, 5, 7, 8, 10, 11, 13}) {
        const Field& f = Field::standard(m);
        EXPECT_TRUE(conjecture2_check(f, 3).holds) << "m=" << m;
        EXPECT_TRUE(conjecture1_check(f, 3).holds) << "m=" << m;
    }
    const auto c = conjecture2_check(Field::standard(9), 3);
    EXPECT_FALSE(c.holds);
    EXPECT_EQ(c.delta(), c.lhs - c.rhs);
}

TEST(ExpSums, KPrimeAtK1IsKloosterman) {
    for (int m = 1; m <= 14; ++m)
        EXPECT_EQ(k_prime(Field::standard(m), 1).value, kloosterman(Field::standard(m)).value) << "m=" << m;
}

TEST(ExpSums, SumsIndependentOfWorkerCount) {
    const Field& f = Field::standard(12);
    const auto base = g_sum(f, 5).value;
    for (const char* n : {"1", "3", "7"}) {
        setenv("BINZETA_THREADS", n, 1);
        EXPECT_EQ(g_sum(f, 5).value, base) << "workers=" << n;
    }
    unsetenv("BINZETA_THREADS");
}
