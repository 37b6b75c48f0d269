#pragma once

// Exponential sums over GF(2^m) by full enumeration:
//   K_m      = sum_{x != 0} (-1)^Tr(x + 1/x)
//   C_m      = sum_{x}      (-1)^Tr(x^(2^k+1) + x)
//   G_m^(k)  = sum_{x != 0} (-1)^Tr(x^(2^k+1) + 1/x)
//   K'_m     = sum_{v != 0} (-1)^Tr(f(v))
// These are the reference values every other route is checked against.

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "binzeta/errors.hpp"
#include "binzeta/gf2m.hpp"
#include "binzeta/parallel.hpp"

namespace binzeta {

struct ExpSumReport {
    std::string name;
    int m = 0;
    std::optional<int> k;
    std::int64_t value = 0;
    /// Number of summation arguments whose trace argument is 0.
    std::int64_t trace_zero_count = 0;
    /// 2^m - 1, or 2^m for C_m.
    std::int64_t domain_size = 0;
    /// K'_m only: points where the denominator of f vanishes outside {0, 1}.
    std::int64_t degenerate_count = 0;
};

/// How k_prime treats v outside {0,1} where the denominator of f vanishes
/// (only possible when gcd(k, m) > 1).
enum class DegeneratePolicy {
    reject,              ///< propagate the DomainError from f_map
    count_as_trace_one,  ///< the point contributes -1, as on the curve side
};

namespace detail {

inline ExpSumReport make_report(std::string name, int m, std::optional<int> k, std::int64_t zeros,
                                std::int64_t domain) {
    return {std::move(name), m, k, 2 * zeros - domain, zeros, domain, 0};
}

/// Counts t in [0, 2^m - 1) with pred(alpha^t) true.
template <typename Pred>
std::int64_t count_nonzero(const Field& f, Pred pred) {
    return parallel_sum(f.order(), [&](std::uint64_t t) -> std::int64_t { return pred(f.generator_power(t)) ? 1 : 0; });
}

inline std::uint64_t frobenius_exponent(const Field& f, int k) {
    return pow_mod(2, static_cast<std::uint64_t>(k), f.order());
}

inline void check_k(int k) {
    if (k < 1) throw PreconditionError("k must be >= 1");
}

}  // namespace detail

inline ExpSumReport kloosterman(const Field& f) {
    const auto zeros = detail::count_nonzero(f, [&](Element x) { return f.trace(Field::add(x, f.inv(x))) == 0; });
    return detail::make_report("K", f.degree(), std::nullopt, zeros, static_cast<std::int64_t>(f.order()));
}

inline ExpSumReport c_sum(const Field& f, int k) {
    detail::check_k(k);
    const std::uint64_t e = detail::frobenius_exponent(f, k) + 1;
    // x = 0 contributes Tr(0) = 0.
    const auto zeros =
        1 + detail::count_nonzero(f, [&](Element x) { return f.trace(Field::add(f.pow(x, e), x)) == 0; });
    return detail::make_report("C", f.degree(), k, zeros, static_cast<std::int64_t>(f.size()));
}

inline ExpSumReport g_sum(const Field& f, int k) {
    detail::check_k(k);
    const std::uint64_t e = detail::frobenius_exponent(f, k) + 1;
    const auto zeros =
        detail::count_nonzero(f, [&](Element x) { return f.trace(Field::add(f.pow(x, e), f.inv(x))) == 0; });
    return detail::make_report("G", f.degree(), k, zeros, static_cast<std::int64_t>(f.order()));
}

/// The closed form of C_m for odd m with gcd(k, m) = 1: +2^((m+1)/2) when
/// m = +-1 mod 8, -2^((m+1)/2) when m = +-3 mod 8. Empty for even m.
inline std::optional<std::int64_t> c_closed_form(int m) {
    if (m % 2 == 0) return std::nullopt;
    const std::int64_t mag = std::int64_t{1} << ((m + 1) / 2);
    const int r = m % 8;
    return (r == 1 || r == 7) ? mag : -mag;
}

namespace detail {

/// f(v) or nullopt when the denominator vanishes at v outside {0, 1}.
inline std::optional<Element> try_f_map(const Field& f, Element v, std::uint64_t frob) {
    if (v.bits <= 1) return Element{0};
    const Element vq = f.pow(v, frob);
    const Element base = Field::add(vq, v);
    if (base.is_zero()) return std::nullopt;
    const Element num = f.mul(Field::add(vq, f.one()), vq);
    const Element den = f.pow(base, frob + 1);
    return f.mul(num, f.inv(den));
}

}  // namespace detail

/// f(v) = (v^(2^k) + 1) v^(2^k) / (v^(2^k) + v)^(2^k + 1), with f(0) = f(1) = 0.
inline Element f_map(const Field& f, Element v, int k) {
    detail::check_k(k);
    if (auto r = detail::try_f_map(f, v, detail::frobenius_exponent(f, k))) return *r;
    std::ostringstream msg;
    msg << "f_map: denominator vanishes at v=0x" << std::hex << v.bits << " (gcd(k,m) > 1)";
    throw DomainError(msg.str());
}

/// K'_m summed over GF(2^m)^*. Including v = 0 would add exactly +1.
inline ExpSumReport k_prime(const Field& f, int k, DegeneratePolicy policy = DegeneratePolicy::count_as_trace_one) {
    detail::check_k(k);
    const std::uint64_t frob = detail::frobenius_exponent(f, k);
    if (policy == DegeneratePolicy::reject && std::gcd(k, f.degree()) != 1) {
        // Surface the first offending point with a proper message.
        for (std::uint64_t t = 0; t < f.order(); ++t) (void)f_map(f, f.generator_power(t), k);
    }
    struct Tally {
        std::int64_t zeros = 0;
        std::int64_t degenerate = 0;
    };
    const Tally tally = parallel_reduce<Tally>(
        f.order(), Tally{},
        [&](std::uint64_t lo, std::uint64_t hi) {
            Tally acc;
            for (std::uint64_t t = lo; t < hi; ++t) {
                const auto fv = detail::try_f_map(f, f.generator_power(t), frob);
                if (!fv)
                    ++acc.degenerate;
                else if (f.trace(*fv) == 0)
                    ++acc.zeros;
            }
            return acc;
        },
        [](Tally a, Tally b) { return Tally{a.zeros + b.zeros, a.degenerate + b.degenerate}; });
    auto report = detail::make_report("Kp", f.degree(), k, tally.zeros, static_cast<std::int64_t>(f.order()));
    report.degenerate_count = tally.degenerate;
    return report;
}

struct ConjectureVerdict {
    bool holds = false;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    std::int64_t delta() const { return lhs - rhs; }
};

/// K'_m(k) against K_m.
inline ConjectureVerdict conjecture2_check(const Field& f, int k) {
    const auto lhs = k_prime(f, k).value;
    const auto rhs = kloosterman(f).value;
    return {lhs == rhs, lhs, rhs};
}

/// G_m^(k) against G_m^(gcd(k, m)).
inline ConjectureVerdict conjecture1_check(const Field& f, int k) {
    const auto lhs = g_sum(f, k).value;
    const int g = std::gcd(k, f.degree());
    const auto rhs = g == k ? lhs : g_sum(f, g).value;
    return {lhs == rhs, lhs, rhs};
}

}  // namespace binzeta
