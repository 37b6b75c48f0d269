#pragma once

// The twelve acceptance criteria, each a self-contained check with a runtime
// budget. Shared by `binzeta verify-all` and the acceptance test binary.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "binzeta/commands.hpp"

namespace binzeta {

struct AcceptanceOptions {
    int max_m = 24;  ///< field degrees above this are skipped
    int max_s = 10;  ///< extension degrees above this are skipped
};

struct CriterionOutcome {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double wall_time_ms = 0;
    std::optional<double> budget_ms;
    bool over_budget() const { return budget_ms && wall_time_ms > *budget_ms; }
};

namespace detail {

/// Collects failures for one criterion; passed iff nothing was added.
struct Findings {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename A, typename B>
    void expect_eq(const A& observed, const B& expected, const std::string& what) {
        if (!(observed == expected)) {
            std::ostringstream s;
            s << what << ": got " << observed << ", want " << expected;
            failures.push_back(s.str());
        }
    }
    std::string summary() const {
        std::string out;
        const auto& items = failures.empty() ? notes : failures;
        for (std::size_t i = 0; i < items.size() && i < 6; ++i) out += (i ? "; " : "") + items[i];
        if (items.size() > 6) out += "; ... (" + std::to_string(items.size()) + " total)";
        return out;
    }
};

inline std::ostream& operator<<(std::ostream& o, const FiveValued& v) {
    return o << "(" << v.n0 << "," << v.n1 << "," << v.n_minus1 << "," << v.n2 << "," << v.n_minus2 << ")";
}

inline std::vector<int> bounded(std::initializer_list<int> values, int max) {
    std::vector<int> out;
    for (int v : values)
        if (v <= max) out.push_back(v);
    return out;
}

inline std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline const std::vector<int>& proved_k3_degrees() {
    static const std::vector<int> ms{4, 5, 7, 8, 10, 11, 13, 14, 16, 17};
    return ms;
}

inline Findings criterion1(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    std::vector<int> ms;
    for (int m : proved_k3_degrees())
        if (m <= o.max_m) ms.push_back(m);
    for (int m : ms) {
        const auto v = conjecture2_check(fields.get(m), 3);
        r.expect_eq(v.lhs, v.rhs, "K'_" + std::to_string(m) + " vs K_" + std::to_string(m));
    }
    r.notes.push_back("K'=K for m in {" + join(ms) + "}");
    return r;
}

inline Findings criterion2(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    for (int m : proved_k3_degrees()) {
        if (m > o.max_m) continue;
        const Field& f = fields.get(m);
        r.expect_eq(g_sum(f, 3).value, g_sum(f, 1).value, "G^(3) vs G at m=" + std::to_string(m));
    }
    int checked = 0;
    for (int m = 1; m <= std::min(16, o.max_m); ++m)
        for (int k = 1; k <= 5; ++k) {
            const auto v = conjecture1_check(fields.get(m), k);
            r.expect_eq(v.lhs, v.rhs, "G^(" + std::to_string(k) + ") vs G^(gcd) at m=" + std::to_string(m));
            ++checked;
        }
    r.notes.push_back(std::to_string(checked) + " (m,k) pairs with k<=5");
    return r;
}

inline Findings criterion3(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    int checked = 0;
    for (int m = 1; m <= std::min(19, o.max_m); m += 2)
        for (int k = 1; k <= 5; ++k) {
            if (std::gcd(k, m) != 1) continue;
            r.expect_eq(c_sum(fields.get(m), k).value, *c_closed_form(m),
                        "C_" + std::to_string(m) + " (k=" + std::to_string(k) + ")");
            ++checked;
        }
    r.notes.push_back(std::to_string(checked) + " (m,k) pairs, odd m<=19");
    return r;
}

inline Findings criterion4(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    const std::vector<std::pair<int, int>> cases{{5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {7, 3}, {9, 2}};
    std::string seen;
    for (auto [m, k] : cases) {
        if (m > o.max_m) continue;
        const auto rep = a1_formula(fields.get(m), k, 9);
        r.expect(rep.brute_count.has_value(), "no brute count at m=" + std::to_string(m));
        if (rep.brute_count)
            r.expect_eq(*rep.brute_count, rep.formula_value,
                        "A1 brute vs formula (m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")");
        seen += (seen.empty() ? "" : " ") + std::to_string(m) + "/" + std::to_string(k) + ":" +
                std::to_string(rep.formula_value);
    }
    r.notes.push_back("A1 by m/k: " + seen);
    return r;
}

inline Findings criterion5(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    for (int m : bounded({5, 7, 11, 13}, o.max_m)) {
        const Field& f = fields.get(m);
        std::optional<CorrelationDistribution> first;
        for (int k = 1; k <= 3; ++k) {
            if (std::gcd(k, m) != 1) continue;
            const std::string tag = "(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
            const auto dist = correlation_distribution(f, decimation_exponent(m, k));
            const auto predicted = theorem1_multiplicities(m, a1_formula(f, k, 0).formula_value);
            r.expect_eq(bucket_by_magnitude(dist).counts, predicted, "multiplicities " + tag);
            if (first)
                r.expect(dist == *first, "distribution differs from k=1 " + tag);
            else
                first = dist;
        }
        if (m == 11) {
            r.expect_eq(bucket_by_magnitude(*first).counts, FiveValued{1155, 440, 408, 22, 22}, "m=11 table");
            r.notes.push_back("m=11: (1155,440,408,22,22)");
        }
    }
    return r;
}

inline Findings criterion6(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    for (int m : bounded({7, 11}, o.max_m)) {
        const Field& f = fields.get(m);
        const auto k1 = weight_distribution(f, 1, WeightMode::via_correlation);
        const auto known = *known_weight_distribution(m);
        for (auto [w, c] : known) r.expect_eq(k1.count(w), c, "A_" + std::to_string(w) + " at m=" + std::to_string(m));
        r.expect_eq(static_cast<std::int64_t>(k1.entries.size()), static_cast<std::int64_t>(known.size()),
                    "number of weights at m=" + std::to_string(m));
        r.expect(weight_distribution(f, 3, WeightMode::via_correlation) == k1,
                 "k=3 differs from k=1 at m=" + std::to_string(m));
        if (m == 7) r.expect(weight_distribution(f, 1, WeightMode::direct) == k1, "direct differs at m=7");
    }
    r.notes.push_back("A_64=8255 (m=7), A_1024=2368379 (m=11)");
    return r;
}

inline Findings criterion7(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    for (const auto& entry : curve_catalog()) {
        if (entry.correction == Correction::none) continue;
        const int s_top = std::min(entry.name == "p1tilde" ? 8 : 10, o.max_s);
        const LPolynomial l = catalog_lpoly(entry.l_polynomial_name).expanded();
        const bool quadratic = entry.name == "p1tilde";
        for (int s = 1; s <= s_top; ++s) {
            const Field& f = fields.get(s);
            const std::int64_t count = quadratic ? count_projective_points_quadratic(entry.polynomial, f)
                                                 : count_projective_points(entry.polynomial, f);
            const BigInt want = predicted_count(l, s) - correction_offset(entry.correction, s);
            r.expect(BigInt(count) == want, entry.name + " N_" + std::to_string(s) + ": got " +
                                                std::to_string(count) + ", want " + want.str());
        }
        r.notes.push_back(entry.name + " s<=" + std::to_string(s_top));
    }
    return r;
}

inline Findings criterion8(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    const int top = std::min(18, o.max_m);
    const auto p1 = power_sums(catalog_lpoly("L1").expanded(), top);
    const auto p2 = power_sums(catalog_lpoly("L2").expanded(), top);
    const auto p3 = power_sums(catalog_lpoly("L3").expanded(), top);
    const auto p4 = power_sums(catalog_lpoly("L4").expanded(), top);
    for (int m = 1; m <= top; ++m) {
        const Field& f = fields.get(m);
        const std::string tag = " at m=" + std::to_string(m);
        r.expect(BigInt(kloosterman(f).value) == -p2[m], "K = -P(L2)" + tag);
        r.expect(BigInt(g_sum(f, 1).value) == -p4[m], "G = -P(L4)" + tag);
        r.expect(BigInt(g_sum(f, 3).value) == -p3[m], "G^(3) = -P(L3)" + tag);
        r.expect(BigInt(k_prime(f, 3).value) == 2 - s1_correction(m) - p1[m], "K' = 2 - S - P(L1)" + tag);
    }
    r.notes.push_back("m=1.." + std::to_string(top));
    return r;
}

inline Findings criterion9(FieldSource&, const AcceptanceOptions&) {
    Findings r;
    const LPolynomial quotient =
        poly_divide_exact(catalog_lpoly("L1").expanded(), catalog_lpoly("L2").expanded());
    const LPolynomial printed = catalog_lpoly("L1prime").expanded();
    r.expect(quotient == printed, "L1/L2 does not match the printed expansion");
    for (int j = 0; j <= std::max(quotient.degree(), printed.degree()); ++j)
        r.expect(quotient.coeff(j) == printed.coeff(j), "coefficient of t^" + std::to_string(j));
    const auto v = vanishing_residue_check(quotient, 3, 200);
    r.expect(v.coefficients_vanish, "a coefficient at j not divisible by 3 is nonzero");
    r.expect(v.holds, "P_m(L1') != 0 at m=" + std::to_string(v.first_failure.value_or(0)));
    r.notes.push_back("leading coefficient " + quotient.coeff(quotient.degree()).str() + ", bound 200");
    return r;
}

inline Findings criterion10(FieldSource& fields, const AcceptanceOptions& o) {
    Findings r;
    struct Case {
        std::string curve;
        int g;
    };
    for (const Case& c : {Case{"kloosterman", 1}, Case{"p4", 2}, Case{"p3", 5}}) {
        if (c.g > o.max_s) continue;
        const auto& entry = catalog_curve(c.curve);
        std::vector<std::int64_t> counts;
        for (int s = 1; s <= c.g; ++s)
            counts.push_back(count_projective_points(entry.polynomial, fields.get(s)) +
                             correction_offset(entry.correction, s));
        const LPolynomial got = reconstruct_from_counts(counts, 2, c.g);
        const LPolynomial want = catalog_lpoly(entry.l_polynomial_name).expanded();
        r.expect(got == want, c.curve + ": reconstructed " + got.to_string() + ", want " + want.to_string());
        r.notes.push_back(entry.l_polynomial_name + " from " + c.curve);
    }
    return r;
}

inline Findings criterion11(FieldSource&, const AcceptanceOptions&) {
    Findings r;
    const auto sums = power_sums(catalog_lpoly("singular_extra").expanded(), 50);
    for (int s = 1; s <= 50; ++s)
        r.expect(sums[s] == s1_correction(s), "P_" + std::to_string(s) + " = " + sums[s].str());
    r.notes.push_back("s=1..50");
    return r;
}

inline Findings criterion12(FieldSource&, const AcceptanceOptions&) {
    Findings r;
    const TrivariatePoly x_plus_z{{1, 0, 0}, {0, 0, 1}};
    const auto& fbar3 = catalog_curve("fbar3").polynomial;
    const auto& p1 = catalog_curve("p1tilde").polynomial;
    std::optional<unsigned> found;
    for (unsigned e = 1; e <= 8 && !found; ++e)
        if (poly_power(x_plus_z, e) * p1 == fbar3) found = e;
    r.expect(found.has_value(), "no e in [1,8] with (x+z)^e * P1 = fbar3");
    if (found) {
        r.expect_eq(*found, 8u, "exponent");
        r.notes.push_back("e=" + std::to_string(*found));
    }
    return r;
}

}  // namespace detail

struct CriterionSpec {
    int id;
    std::string title;
    std::optional<double> budget_ms;
    std::function<detail::Findings(FieldSource&, const AcceptanceOptions&)> run;
};

inline const std::vector<CriterionSpec>& acceptance_criteria() {
    static const std::vector<CriterionSpec> list{
        {1, "K'_m = K_m at k=3, 3 not dividing m <= 17", 30e3, detail::criterion1},
        {2, "G^(3) = G and G^(k) = G^(gcd(k,m)) for k<=5, m<=16", 60e3, detail::criterion2},
        {3, "C_m closed form for odd m <= 19", std::nullopt, detail::criterion3},
        {4, "A1 brute force equals the formula", 120e3, detail::criterion4},
        {5, "five-valued correlation distribution, identical across k", 120e3, detail::criterion5},
        {6, "weight distributions for m=7 and m=11", 60e3, detail::criterion6},
        {7, "curve point counts match L-polynomial predictions", 300e3, detail::criterion7},
        {8, "exponential sums equal negated power sums, m<=18", 120e3, detail::criterion8},
        {9, "d_m vanishes for 3 not dividing m <= 200", 1e3, detail::criterion9},
        {10, "L-polynomials reconstructed from point counts", 60e3, detail::criterion10},
        {11, "singular correction equals power sums of the extra factor", std::nullopt, detail::criterion11},
        {12, "(x+z)^e * P1 = fbar3 for some e in [1,8]", std::nullopt, detail::criterion12},
    };
    return list;
}

/// Runs one criterion; exceptions become failures, budget overruns too.
inline CriterionOutcome run_criterion(const CriterionSpec& spec, FieldSource& fields, const AcceptanceOptions& opts) {
    CriterionOutcome out{spec.id, spec.title, false, "", 0, spec.budget_ms};
    Stopwatch clock;
    try {
        const auto findings = spec.run(fields, opts);
        out.passed = findings.failures.empty();
        out.detail = findings.summary();
    } catch (const std::exception& e) {
        out.detail = std::string("exception: ") + e.what();
    }
    out.wall_time_ms = clock.elapsed_ms();
    if (out.over_budget()) {
        out.passed = false;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string("over budget");
    }
    return out;
}

inline RunReport cmd_verify_all(FieldSource& fields, const AcceptanceOptions& opts,
                                const std::function<void(const CriterionOutcome&)>& progress = {}) {
    Stopwatch clock;
    RunReport r{"verify-all", {{"max_m", opts.max_m}, {"max_s", opts.max_s}}, {}, 0};
    for (const auto& spec : acceptance_criteria()) {
        const auto out = run_criterion(spec, fields, opts);
        if (progress) progress(out);
        auto& item = r.check_true(std::to_string(out.id) + ". " + out.title, out.passed, out.detail,
                                  spec.budget_ms ? Json("holds within " + std::to_string(static_cast<int>(
                                                                               *spec.budget_ms / 1000)) + " s")
                                                 : Json("holds"));
        item.wall_time_ms = out.wall_time_ms;
    }
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

}  // namespace binzeta
