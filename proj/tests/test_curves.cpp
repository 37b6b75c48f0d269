#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "binzeta/curves.hpp"
#include "binzeta/expsums.hpp"
#include "binzeta/zeta.hpp"

using namespace binzeta;

namespace {

/// Projective count by enumerating every nonzero triple and dividing by q - 1.
std::int64_t naive_projective_count(const TrivariatePoly& p, const Field& f) {
    std::int64_t zeros = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
        for (std::uint32_t y = 0; y < f.size(); ++y)
            for (std::uint32_t z = 0; z < f.size(); ++z)
                if ((x | y | z) && evaluate(p, {{x}, {y}, {z}}, f).is_zero()) ++zeros;
    return zeros / static_cast<std::int64_t>(f.order());
}

TrivariatePoly random_quadratic_in_y(std::mt19937_64& rng, unsigned degree) {
    TrivariatePoly p;
    for (int i = 0; i < 6; ++i) {
        const unsigned b = static_cast<unsigned>(rng() % 3);
        const unsigned a = static_cast<unsigned>(rng() % (degree - b + 1));
        p.toggle({a, b, degree - a - b});
    }
    return p;
}

}  // namespace

TEST(Curves, ToggleSemantics) {
    TrivariatePoly p{{1, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    EXPECT_EQ(p.size(), 1u);
    p.toggle({0, 1, 0});
    EXPECT_TRUE(p.empty());
    const TrivariatePoly a{{1, 0, 0}, {0, 0, 1}};
    EXPECT_TRUE((a + a).empty());
    EXPECT_EQ((a * a).to_string(), "x^2 + z^2");  // characteristic 2
}

TEST(Curves, DegreesAndHomogeneity) {
    const auto& k = catalog_curve("kloosterman").polynomial;
    EXPECT_EQ(k.total_degree(), 3u);
    EXPECT_TRUE(k.is_homogeneous());
    EXPECT_EQ(k.degree_in(Variable::y), 2u);
    EXPECT_EQ(catalog_curve("p1tilde").polynomial.size(), 29u);
    EXPECT_EQ(catalog_curve("p1tilde").polynomial.total_degree(), 58u);
    EXPECT_EQ(catalog_curve("fbar3").polynomial.total_degree(), 66u);
    EXPECT_FALSE((TrivariatePoly{{2, 0, 0}, {0, 1, 0}}).is_homogeneous());
}

TEST(Curves, HomogenizeRoundTrip) {
    const TrivariatePoly affine = kloosterman_affine_curve();
    const auto h = homogenize(affine, 3);
    EXPECT_EQ(h, catalog_curve("kloosterman").polynomial);
    EXPECT_EQ(dehomogenize(h), affine);
    EXPECT_THROW(homogenize(affine, 2), PreconditionError);
    EXPECT_THROW(homogenize(TrivariatePoly{{0, 0, 1}}, 3), PreconditionError);
    EXPECT_EQ(homogenize(g_affine_curve(3), 10), catalog_curve("p3").polynomial);
    EXPECT_EQ(homogenize(g_affine_curve(1), 4), catalog_curve("p4").polynomial);
}

TEST(Curves, FormalDerivative) {
    const TrivariatePoly p{{3, 1, 0}, {2, 0, 1}, {0, 0, 0}};
    EXPECT_EQ(formal_derivative(p, Variable::x), (TrivariatePoly{{2, 1, 0}}));  // 2x z vanishes
    EXPECT_EQ(formal_derivative(p, Variable::y), (TrivariatePoly{{3, 0, 0}}));
    EXPECT_EQ(formal_derivative(p, Variable::z), (TrivariatePoly{{2, 0, 0}}));
}

TEST(Curves, Fbar3FactorsThroughP1Tilde) {
    const TrivariatePoly xz{{1, 0, 0}, {0, 0, 1}};
    const auto& fbar3 = catalog_curve("fbar3").polynomial;
    const auto& p1 = catalog_curve("p1tilde").polynomial;
    EXPECT_EQ(poly_power(xz, 8) * p1, fbar3);
    for (unsigned e = 1; e < 8; ++e) EXPECT_NE(poly_power(xz, e) * p1, fbar3);
    // (x+z)^8 = x^8 + z^8 in characteristic 2.
    EXPECT_EQ(poly_power(xz, 8), (TrivariatePoly{{8, 0, 0}, {0, 0, 8}}));
}

TEST(Curves, GenericCounterMatchesNaive) {
    for (const char* name : {"kloosterman", "p3", "p4"})
        for (int s = 1; s <= 4; ++s) {
            const auto& p = catalog_curve(name).polynomial;
            EXPECT_EQ(count_projective_points(p, Field::standard(s)), naive_projective_count(p, Field::standard(s)))
                << name << " s=" << s;
        }
}

TEST(Curves, QuadraticCounterMatchesGenericProperty) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned degree = 2 + static_cast<unsigned>(rng() % 6);
        const auto p = random_quadratic_in_y(rng, degree);
        if (p.empty()) continue;
        for (int s = 1; s <= 5; ++s)
            EXPECT_EQ(count_projective_points_quadratic(p, Field::standard(s)),
                      count_projective_points(p, Field::standard(s)))
                << p.to_string() << " s=" << s;
    }
}

TEST(Curves, CatalogCountsMatchLPolynomials) {
    for (const auto& e : curve_catalog()) {
        if (e.correction == Correction::none) continue;
        const auto l = catalog_lpoly(e.l_polynomial_name).expanded();
        const int top = e.name == "p1tilde" ? 6 : 7;
        for (int s = 1; s <= top; ++s) {
            const Field& f = Field::standard(s);
            const std::int64_t n = e.name == "p1tilde" ? count_projective_points_quadratic(e.polynomial, f)
                                                       : count_projective_points(e.polynomial, f);
            EXPECT_EQ(BigInt(n), predicted_count(l, s) - correction_offset(e.correction, s)) << e.name << " s=" << s;
        }
    }
}

TEST(Curves, P1TildeFrozenCounts) {
    const std::int64_t want[] = {2, 6, 2, 14, 42, 66, 114, 286};
    const auto& p1 = catalog_curve("p1tilde").polynomial;
    const auto& fbar3 = catalog_curve("fbar3").polynomial;
    for (int s = 1; s <= 8; ++s) {
        const Field& f = Field::standard(s);
        const std::int64_t n = count_projective_points_quadratic(p1, f);
        EXPECT_EQ(n, want[s - 1]) << "s=" << s;
        // The line x + z = 0 adds 2^s points off P1.
        EXPECT_EQ(count_projective_points_quadratic(fbar3, f) - n, std::int64_t{1} << s) << "s=" << s;
    }
}

TEST(Curves, KPrimeFromP1TildeCount) {
    // Extends the acceptance range of the K'-vs-L1 identity past the curve counts.
    const auto l1 = catalog_lpoly("L1").expanded();
    const auto p = power_sums(l1, 12);
    for (int s = 1; s <= 12; ++s)
        EXPECT_EQ(BigInt(k_prime(Field::standard(s), 3).value), 2 - s1_correction(s) - p[s]) << "s=" << s;
}

TEST(Curves, SingularPoints) {
    const ProjectivePoint at_y{{0}, {1}, {0}};
    for (const char* name : {"p3", "p4"}) {
        const auto pts = singular_points(catalog_curve(name).polynomial, Field::standard(1));
        ASSERT_EQ(pts.size(), 1u) << name;
        EXPECT_EQ(pts[0].x, at_y.x);
        EXPECT_EQ(pts[0].y, at_y.y);
        EXPECT_EQ(pts[0].z, at_y.z);
    }
    for (int s = 1; s <= 4; ++s)
        EXPECT_TRUE(singular_points(catalog_curve("kloosterman").polynomial, Field::standard(s)).empty());
}

TEST(Curves, ProjectiveZerosAgreeWithCount) {
    for (int s = 1; s <= 5; ++s) {
        const auto& p = catalog_curve("p4").polynomial;
        EXPECT_EQ(static_cast<std::int64_t>(projective_zeros(p, Field::standard(s)).size()),
                  count_projective_points(p, Field::standard(s)));
    }
}

TEST(Curves, CostCaps) {
    EXPECT_THROW(count_projective_points(catalog_curve("p4").polynomial, Field::standard(13)), CostRefusal);
    EXPECT_THROW(count_projective_points(TrivariatePoly{{2, 0, 0}, {0, 1, 0}}, Field::standard(2)), PreconditionError);
    EXPECT_THROW(count_projective_points_quadratic(TrivariatePoly{{0, 3, 0}}, Field::standard(2)), PreconditionError);
}

TEST(Curves, S1Correction) {
    EXPECT_EQ(s1_correction(1), 2);
    EXPECT_EQ(s1_correction(3), 8);
    EXPECT_EQ(correction_offset(Correction::minus_one, 5), 1);
    EXPECT_THROW(correction_offset(Correction::none, 5), PreconditionError);
}

TEST(Curves, FileRoundTrip) {
    for (const auto& e : curve_catalog()) {
        std::stringstream io;
        write_curve(io, e.polynomial, e.description);
        EXPECT_EQ(parse_curve(io), e.polynomial) << e.name;
    }
    std::istringstream bad("1 2\n");
    EXPECT_THROW(parse_curve(bad), ParseError);
    EXPECT_THROW(catalog_curve("nope"), PreconditionError);
}
