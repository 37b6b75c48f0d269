#pragma once

// Cross-correlation of an m-sequence with its decimation, the solution count
// A_1 of the power-sum system, the five-valued multiplicity formulas, and the
// weight distribution of the two-nonzero cyclic code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "binzeta/errors.hpp"
#include "binzeta/expsums.hpp"
#include "binzeta/gf2m.hpp"
#include "binzeta/parallel.hpp"

namespace binzeta {

/// Multiplicity of each correlation value C_d(tau) over tau in [0, 2^m - 2].
struct CorrelationDistribution {
    int m = 0;
    std::uint64_t d = 0;
    std::map<std::int64_t, std::int64_t> entries;

    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto [v, c] : entries) s += c;
        return s;
    }
    friend bool operator==(const CorrelationDistribution& a, const CorrelationDistribution& b) {
        return a.entries == b.entries;
    }
};

struct MomentCheck {
    bool count = false;   ///< sum of multiplicities = 2^m - 1
    bool first = false;   ///< sum value * mult = 1
    bool second = false;  ///< sum value^2 * mult = 2^(2m) - 2^m - 1
    bool all() const { return count && first && second; }
};

inline MomentCheck check_moments(const CorrelationDistribution& dist) {
    const std::int64_t q = std::int64_t{1} << dist.m;
    std::int64_t n = 0, s1 = 0, s2 = 0;
    for (auto [v, c] : dist.entries) {
        n += c;
        s1 += v * c;
        s2 += v * v * c;
    }
    return {n == q - 1, s1 == 1, s2 == q * q - q - 1};
}

namespace detail {

inline void require_coprime_decimation(const Field& f, std::uint64_t d) {
    if (std::gcd(d % f.order(), f.order()) != 1 && f.order() != 1)
        throw PreconditionError("decimation d=" + std::to_string(d) + " is not coprime to 2^m-1=" +
                                std::to_string(f.order()));
}

/// In-place Walsh-Hadamard transform: out[w] = sum_x in[x] (-1)^popcount(w & x).
inline void fwht(std::vector<std::int64_t>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1)
        for (std::size_t i = 0; i < v.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
}

/// Linear map a -> w(a) with Tr(a x) = parity(w(a) & x), tabulated on a basis.
class TraceForms {
public:
    explicit TraceForms(const Field& f) {
        Element basis{1};
        for (int i = 0; i < f.degree(); ++i, basis = f.mul_by_x(basis)) rows_.push_back(f.trace_form(basis));
    }
    std::uint32_t operator()(Element a) const {
        std::uint32_t w = 0;
        for (std::uint32_t bits = a.bits; bits; bits &= bits - 1) w ^= rows_[std::countr_zero(bits)];
        return w;
    }

private:
    std::vector<std::uint32_t> rows_;
};

inline void check_cap(int m, int cap, const std::string& what, const std::string& cost) {
    if (m > cap)
        throw CostRefusal(what + ": m=" + std::to_string(m) + " exceeds cap " + std::to_string(cap) +
                          " (cost ~" + cost + "); raise the cap explicitly");
}

}  // namespace detail

/// C_d(tau) = sum_{x != 0} (-1)^Tr(alpha^tau x + x^d), by direct enumeration.
inline std::int64_t cross_correlation(const Field& f, std::uint64_t d, std::uint64_t tau) {
    detail::require_coprime_decimation(f, d);
    if (tau >= f.order()) throw PreconditionError("tau out of range [0, 2^m-2]");
    const Element a = f.generator_power(tau);
    return parallel_sum(f.order(), [&](std::uint64_t t) -> std::int64_t {
        const Element x = f.generator_power(t);
        return f.trace(Field::add(f.mul(a, x), f.pow(x, d))) ? -1 : 1;
    });
}

/// All C_d(tau), indexed by tau, via one Walsh-Hadamard transform of Tr(x^d).
inline std::vector<std::int64_t> correlation_values(const Field& f, std::uint64_t d, int max_m = 17) {
    detail::require_coprime_decimation(f, d);
    detail::check_cap(f.degree(), max_m, "correlation sweep", "m*2^m");
    std::vector<std::int64_t> walsh(f.size(), 0);
    walsh[0] = 1;  // x = 0: Tr(0) = 0
    for (std::uint64_t t = 0; t < f.order(); ++t) {
        const Element x = f.generator_power(t);
        walsh[x.bits] = f.trace(f.pow(x, d)) ? -1 : 1;
    }
    detail::fwht(walsh);
    const detail::TraceForms forms(f);
    std::vector<std::int64_t> values(f.order());
    for (std::uint64_t tau = 0; tau < f.order(); ++tau) values[tau] = walsh[forms(f.generator_power(tau))] - 1;
    return values;
}

inline CorrelationDistribution correlation_distribution(const Field& f, std::uint64_t d, int max_m = 17) {
    CorrelationDistribution dist{f.degree(), d, {}};
    for (std::int64_t v : correlation_values(f, d, max_m)) ++dist.entries[v];
    return dist;
}

/// Counts ordered (x, y, z, u) in GF(2^m)^4 with x+y+z+u = 1,
/// sum x^(2^k+1) = 0 and sum x^(2^(2k)+1) = 0. Cost 2^(3m).
inline std::int64_t a1_bruteforce(const Field& f, int k, int max_m = 9) {
    if (k < 1) throw PreconditionError("k must be >= 1");
    detail::check_cap(f.degree(), max_m, "a1_bruteforce", "2^" + std::to_string(3 * f.degree()) + " quadruples");
    const std::uint64_t q = f.size();
    const std::uint64_t e1 = detail::pow_mod(2, static_cast<std::uint64_t>(k), f.order()) + 1;
    const std::uint64_t e2 = detail::pow_mod(2, 2 * static_cast<std::uint64_t>(k), f.order()) + 1;
    std::vector<std::uint32_t> p1(q), p2(q);
    for (std::uint32_t x = 0; x < q; ++x) {
        p1[x] = f.pow(Element{x}, e1).bits;
        p2[x] = f.pow(Element{x}, e2).bits;
    }
    return parallel_sum(q, [&](std::uint64_t x) -> std::int64_t {
        std::int64_t count = 0;
        for (std::uint32_t y = 0; y < q; ++y) {
            const std::uint32_t s1 = p1[x] ^ p1[y], s2 = p2[x] ^ p2[y];
            const std::uint32_t c = 1u ^ static_cast<std::uint32_t>(x) ^ y;
            for (std::uint32_t z = 0; z < q; ++z) {
                const std::uint32_t u = c ^ z;
                count += ((p1[z] ^ p1[u]) == s1) & ((p2[z] ^ p2[u]) == s2);
            }
        }
        return count;
    });
}

struct A1Report {
    int m = 0;
    int k = 0;
    std::int64_t formula_value = 0;
    std::optional<std::int64_t> brute_count;
    std::int64_t g = 0;        ///< G_m^(k)
    std::int64_t k_sum = 0;    ///< K'_m, or K_m when k = 1
    std::int64_t c = 0;        ///< C_m (with exponent 2^k + 1)
};

/// A_1 = 2^m + 1 + 3 G_m^(k) - 2 K'_m - 2 C_m (K_m in place of K'_m for k = 1).
/// The brute count is filled when m <= brute_cap.
inline A1Report a1_formula(const Field& f, int k, int brute_cap = 9) {
    const int m = f.degree();
    if (m % 2 == 0 || std::gcd(k, m) != 1)
        throw PreconditionError("a1_formula requires m odd and gcd(k, m) = 1");
    A1Report r{m, k, 0, std::nullopt, g_sum(f, k).value, k == 1 ? kloosterman(f).value : k_prime(f, k).value,
               c_sum(f, k).value};
    r.formula_value = (std::int64_t{1} << m) + 1 + 3 * r.g - 2 * r.k_sum - 2 * r.c;
    if (m <= brute_cap) r.brute_count = a1_bruteforce(f, k, brute_cap);
    return r;
}

/// (N_0, N_1, N_-1, N_2, N_-2): multiplicities of -1, -1 + M1, -1 - M1, -1 + M2,
/// -1 - M2 with 0 < M1 < M2.
struct FiveValued {
    std::int64_t n0 = 0, n1 = 0, n_minus1 = 0, n2 = 0, n_minus2 = 0;
    friend bool operator==(const FiveValued&, const FiveValued&) = default;
};

/// Five-valued multiplicities from A_1 for odd m, case gcd(3, m) = 1 or 3.
inline FiveValued theorem1_multiplicities(int m, std::int64_t a1) {
    if (m < 3 || m % 2 == 0 || m > 61) throw PreconditionError("theorem1_multiplicities requires odd m >= 3");
    auto exact = [&](std::int64_t num, std::int64_t den, const char* what) {
        if (num % den != 0 || num < 0)
            throw InconsistencyError(std::string("multiplicity ") + what + " = " + std::to_string(num) + "/" +
                                     std::to_string(den) + " is not a non-negative integer (m=" + std::to_string(m) +
                                     ", A1=" + std::to_string(a1) + ")");
        return num / den;
    };
    const std::int64_t p_m1 = std::int64_t{1} << (m + 1);  // 2^(m+1)
    FiveValued r;
    if (m % 3 != 0) {
        const std::int64_t h = std::int64_t{1} << ((m + 3) / 2);
        r.n2 = r.n_minus2 = exact(a1, 96, "N2");
        r.n_minus1 = exact(3 * p_m1 - 3 * h - a1, 24, "N-1");
        r.n1 = exact(3 * p_m1 + 3 * h - a1, 24, "N1");
    } else {
        const std::int64_t h = std::int64_t{1} << ((m + 5) / 2);
        r.n_minus2 = exact(-3 * h + a1, 96, "N-2");
        r.n2 = exact(3 * h + a1, 96, "N2");
        r.n1 = r.n_minus1 = exact(3 * p_m1 - a1, 24, "N+-1");
    }
    r.n0 = (std::int64_t{1} << (m - 1)) - 1 + exact(a1, 16, "A1/16");
    return r;
}

/// Observed distribution bucketed by the rank of |value + 1|: 0 -> N_0, the
/// smaller nonzero magnitude -> N_{+-1}, the larger -> N_{+-2}.
struct BucketedDistribution {
    FiveValued counts;
    std::int64_t magnitude1 = 0;  ///< 0 when absent
    std::int64_t magnitude2 = 0;
};

inline BucketedDistribution bucket_by_magnitude(const CorrelationDistribution& dist) {
    std::vector<std::int64_t> mags;
    for (auto [v, c] : dist.entries)
        if (v + 1 != 0) mags.push_back(std::abs(v + 1));
    std::sort(mags.begin(), mags.end());
    mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
    if (mags.size() > 2)
        throw InconsistencyError("distribution has " + std::to_string(mags.size()) + " nonzero magnitudes of C+1");
    BucketedDistribution out;
    if (!mags.empty()) out.magnitude1 = mags[0];
    if (mags.size() > 1) out.magnitude2 = mags[1];
    for (auto [v, c] : dist.entries) {
        const std::int64_t s = v + 1;
        if (s == 0)
            out.counts.n0 += c;
        else if (std::abs(s) == out.magnitude1)
            (s > 0 ? out.counts.n1 : out.counts.n_minus1) += c;
        else
            (s > 0 ? out.counts.n2 : out.counts.n_minus2) += c;
    }
    return out;
}

/// Weight -> number of codewords, over all 2^(2m) words of the code.
struct WeightDistribution {
    int m = 0;
    int k = 0;
    std::map<std::int64_t, std::int64_t> entries;

    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto [w, c] : entries) s += c;
        return s;
    }
    std::int64_t count(std::int64_t w) const {
        auto it = entries.find(w);
        return it == entries.end() ? 0 : it->second;
    }
    friend bool operator==(const WeightDistribution& a, const WeightDistribution& b) {
        return a.entries == b.entries;
    }
};

enum class WeightMode { direct, via_correlation };

namespace detail {

inline WeightDistribution weights_direct(const Field& f, int k) {
    const std::uint64_t n = f.order();
    const std::uint64_t e1 = pow_mod(2, 2 * static_cast<std::uint64_t>(k), n) + 1;
    const std::uint64_t e2 = pow_mod(2, static_cast<std::uint64_t>(k), n) + 1;
    const std::size_t words = (n + 63) / 64;
    // row[a][t] = Tr(a * alpha^(e t)) packed into 64-bit words.
    auto rows = [&](std::uint64_t e) {
        std::vector<std::uint64_t> r(f.size() * words, 0);
        for (std::uint32_t a = 0; a < f.size(); ++a)
            for (std::uint64_t t = 0; t < n; ++t)
                if (f.trace(f.mul(Element{a}, f.generator_power(detail::mul_mod(e % n, t, n)))))
                    r[a * words + t / 64] |= std::uint64_t{1} << (t % 64);
        return r;
    };
    const auto ra = rows(e1), rb = rows(e2);
    using Hist = std::map<std::int64_t, std::int64_t>;
    Hist hist = parallel_reduce<Hist>(
        f.size(), Hist{},
        [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::int64_t> local(n + 1, 0);
            for (std::uint64_t a = lo; a < hi; ++a)
                for (std::uint64_t b = 0; b < f.size(); ++b) {
                    std::int64_t w = 0;
                    for (std::size_t i = 0; i < words; ++i) w += std::popcount(ra[a * words + i] ^ rb[b * words + i]);
                    ++local[w];
                }
            Hist h;
            for (std::size_t w = 0; w <= n; ++w)
                if (local[w]) h[static_cast<std::int64_t>(w)] = local[w];
            return h;
        },
        [](Hist a, Hist b) {
            for (auto [w, c] : b) a[w] += c;
            return a;
        });
    return {f.degree(), k, std::move(hist)};
}

inline WeightDistribution weights_via_correlation(const Field& f, int k) {
    const std::uint64_t n = f.order();
    const std::uint64_t d = decimation_exponent(f.degree(), k);
    const std::uint64_t d_inv = mod_inverse(d, n);
    const std::uint64_t e1 = pow_mod(2, 2 * static_cast<std::uint64_t>(k), n) + 1;
    const TraceForms forms(f);

    // S(a, 1) = sum_{z != 0} (-1)^(Tr(z^(1/d)) + Tr(a z)), after z = y^d.
    std::vector<std::int64_t> s1(f.size(), 0);
    for (std::uint64_t t = 0; t < n; ++t) {
        const Element z = f.generator_power(t);
        s1[z.bits] = f.trace(f.pow(z, d_inv)) ? -1 : 1;
    }
    fwht(s1);
    // S(a, 0) = sum_z #{x != 0 : x^e1 = z} (-1)^Tr(a z).
    std::vector<std::int64_t> s0(f.size(), 0);
    for (std::uint64_t t = 0; t < n; ++t) ++s0[f.pow(f.generator_power(t), e1).bits];
    fwht(s0);

    WeightDistribution out{f.degree(), k, {}};
    const auto weight = [&](std::int64_t s) { return (static_cast<std::int64_t>(n) - s) / 2; };
    out.entries[0] += 1;  // a = b = 0
    for (std::uint32_t a = 1; a < f.size(); ++a) out.entries[weight(s0[forms(Element{a})])] += 1;
    // Every b != 0 row is a permutation of the b = 1 row: S(a, b) = S(a b^-d, 1).
    for (std::uint32_t a = 0; a < f.size(); ++a)
        out.entries[weight(s1[forms(Element{a})])] += static_cast<std::int64_t>(n);
    return out;
}

}  // namespace detail

/// Weight distribution of { (Tr(a alpha^((2^(2k)+1) t) + b alpha^((2^k+1) t)))_t : a, b }.
inline WeightDistribution weight_distribution(const Field& f, int k, WeightMode mode, int direct_cap = 8,
                                              int correlation_cap = 17) {
    if (k < 1) throw PreconditionError("k must be >= 1");
    if (mode == WeightMode::direct) {
        detail::check_cap(f.degree(), direct_cap, "direct weight distribution",
                          "2^" + std::to_string(2 * f.degree()) + " codewords");
        return detail::weights_direct(f, k);
    }
    detail::check_cap(f.degree(), correlation_cap, "weight distribution via correlation", "m*2^m");
    return detail::weights_via_correlation(f, k);
}

}  // namespace binzeta
