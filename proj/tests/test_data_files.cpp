#include <filesystem>

#include <gtest/gtest.h>

#include "binzeta/curves.hpp"
#include "binzeta/gf2m.hpp"
#include "binzeta/zeta.hpp"

using namespace binzeta;

namespace {

const std::filesystem::path kData = BINZETA_DATA_DIR;

}  // namespace

TEST(DataFiles, CurvesMatchCatalog) {
    for (const auto& e : curve_catalog())
        EXPECT_EQ(load_curve((kData / "curves" / (e.name + ".curve")).string()), e.polynomial) << e.name;
}

TEST(DataFiles, LPolynomialsMatchCatalog) {
    for (const auto& e : lpoly_catalog()) {
        const auto factors = load_lpoly_factors((kData / "lpoly" / (e.name + ".lpoly")).string());
        ASSERT_EQ(factors.size(), e.factors.size()) << e.name;
        for (std::size_t i = 0; i < factors.size(); ++i) EXPECT_EQ(factors[i], e.factors[i]) << e.name;
    }
}

TEST(DataFiles, PrimitivePolynomialTable) {
    const auto table = load_reduction_table((kData / "primitive_polys.txt").string());
    ASSERT_EQ(table.size(), 24u);
    for (auto [m, poly] : table) EXPECT_EQ(poly, kPrimitivePolynomials[m]) << "m=" << m;
}
