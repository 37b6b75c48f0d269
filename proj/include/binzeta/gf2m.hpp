#pragma once

// Arithmetic in GF(2^m), 1 <= m <= 24 by default, in the polynomial basis
// over a primitive reduction polynomial. The class of x is the generator.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "binzeta/errors.hpp"

namespace binzeta {

/// A field element as its m-bit polynomial-basis representative.
struct Element {
    std::uint32_t bits = 0;

    constexpr bool is_zero() const noexcept { return bits == 0; }
    friend constexpr auto operator<=>(Element, Element) = default;
};

namespace detail {

/// Inverse of a modulo n, or 0 when gcd(a, n) != 1.
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 0;
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) return 0;
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(t);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t n) {
    if (n == 1) return 0;
    std::uint64_t r = 1;
    base %= n;
    while (e) {
        if (e & 1) r = mul_mod(r, base, n);
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    return r;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline int poly_degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

/// Carryless product of two F2[x] polynomials of degree < 32.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) {
    const int dp = poly_degree(p);
    for (int d = poly_degree(a); d >= dp; d = poly_degree(a)) a ^= p << (d - dp);
    return a;
}

inline std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) a = poly_mod(a, b), std::swap(a, b);
    return a;
}

}  // namespace detail

/// Reduction polynomials (bit i = coefficient of x^i) known to be primitive,
/// for m = 1..24. Field construction re-validates each one.
inline constexpr std::array<std::uint32_t, 25> kPrimitivePolynomials = {
    0,          0x3,       0x7,       0xB,       0x13,      0x25,      0x43,
    0x83,       0x11D,     0x211,     0x409,     0x805,     0x1053,    0x201B,
    0x4443,     0x8003,    0x1100B,   0x20009,   0x40081,   0x80027,   0x100009,
    0x200005,   0x400003,  0x800021,  0x1000087,
};

/// Parses a reduction-polynomial override file: one "m hexmask" pair per line,
/// '#' starts a comment. The mask may carry a 0x prefix.
inline std::map<int, std::uint32_t> parse_reduction_table(std::istream& in) {
    std::map<int, std::uint32_t> table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int m = 0;
        std::string hex;
        if (!(ls >> m)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("reduction table line " + std::to_string(lineno) + ": expected degree");
        }
        if (!(ls >> hex)) throw ParseError("reduction table line " + std::to_string(lineno) + ": missing mask");
        std::string extra;
        if (ls >> extra) throw ParseError("reduction table line " + std::to_string(lineno) + ": trailing text");
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(hex, &used, 16);
            if (used != hex.size()) throw std::invalid_argument(hex);
            table[m] = static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw ParseError("reduction table line " + std::to_string(lineno) + ": bad hex mask '" + hex + "'");
        }
    }
    return table;
}

inline std::map<int, std::uint32_t> load_reduction_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open reduction table " + path);
    return parse_reduction_table(in);
}

/// GF(2^m) with a validated primitive reduction polynomial. Immutable after
/// construction; safe to share across threads. For m <= table_limit the field
/// keeps log/antilog tables, above that it multiplies carrylessly.
class Field {
public:
    static constexpr int kDefaultMaxDegree = 24;
    static constexpr int kDefaultTableLimit = 20;

    Field(int m, std::uint32_t reduction, int max_degree = kDefaultMaxDegree, int table_limit = kDefaultTableLimit)
        : m_(m), reduction_(reduction) {
        if (m < 1 || m > max_degree || m > 31)
            throw PreconditionError("field degree " + std::to_string(m) + " outside [1, " +
                                    std::to_string(std::min(max_degree, 31)) + "]");
        if (detail::poly_degree(reduction) != m)
            throw PreconditionError("reduction polynomial degree differs from m=" + std::to_string(m));
        order_ = (std::uint64_t{1} << m) - 1;
        mask_ = static_cast<std::uint32_t>(order_);
        if (!is_irreducible()) throw PreconditionError("reduction polynomial is reducible for m=" + std::to_string(m));
        if (!generator_is_primitive())
            throw PreconditionError("reduction polynomial is not primitive for m=" + std::to_string(m));
        if (m <= table_limit) build_tables();
        build_trace_mask();
    }

    /// Field over the built-in primitive polynomial; one shared instance per m.
    static const Field& standard(int m) {
        if (m < 1 || m > kDefaultMaxDegree)
            throw PreconditionError("no built-in field for m=" + std::to_string(m));
        static std::array<std::unique_ptr<const Field>, kDefaultMaxDegree + 1> cache;
        static std::array<std::once_flag, kDefaultMaxDegree + 1> once;
        std::call_once(once[m], [m] { cache[m] = std::make_unique<const Field>(m, kPrimitivePolynomials[m]); });
        return *cache[m];
    }

    int degree() const noexcept { return m_; }
    std::uint32_t reduction() const noexcept { return reduction_; }
    /// Multiplicative order 2^m - 1.
    std::uint64_t order() const noexcept { return order_; }
    std::uint64_t size() const noexcept { return order_ + 1; }
    bool has_tables() const noexcept { return !log_.empty(); }

    Element zero() const noexcept { return {0}; }
    Element one() const noexcept { return {1}; }
    /// The class of x, or 1 when m = 1.
    Element generator() const noexcept { return {m_ == 1 ? 1u : 2u}; }

    Element element(std::uint32_t bits) const {
        if (bits & ~mask_) throw PreconditionError("element has bits above degree m-1");
        return {bits};
    }

    static Element add(Element a, Element b) noexcept { return {a.bits ^ b.bits}; }

    Element mul(Element a, Element b) const noexcept {
        if (a.is_zero() || b.is_zero()) return {0};
        if (has_tables()) return {exp_[log_[a.bits] + log_[b.bits]]};
        return {static_cast<std::uint32_t>(detail::poly_mod(detail::clmul(a.bits, b.bits), reduction_))};
    }

    Element square(Element a) const noexcept { return mul(a, a); }

    /// a^e with the empty-product convention pow(0, 0) = 1. Exponents are
    /// reduced modulo 2^m - 1 for nonzero bases.
    Element pow(Element a, std::uint64_t e) const noexcept {
        if (a.is_zero()) return {e == 0 ? 1u : 0u};
        e %= order_;
        if (has_tables()) return {exp_[detail::mul_mod(log_[a.bits], e, order_)]};
        Element r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Element inv(Element a) const {
        if (a.is_zero()) throw DomainError("inverse of zero in GF(2^" + std::to_string(m_) + ")");
        return pow(a, order_ - 1);
    }

    /// Absolute trace to GF(2), as 0 or 1.
    int trace(Element a) const noexcept { return std::popcount(a.bits & trace_mask_) & 1; }

    /// Mask w with Tr(v) = parity(w & v) for every v.
    std::uint32_t trace_mask() const noexcept { return trace_mask_; }

    /// Mask w(a) with Tr(a*v) = parity(w(a) & v) for every v; a -> w(a) is an
    /// F2-linear bijection.
    std::uint32_t trace_form(Element a) const noexcept {
        std::uint32_t w = 0;
        Element basis{1};
        for (int i = 0; i < m_; ++i, basis = mul_by_x(basis))
            if (trace(mul(a, basis))) w |= 1u << i;
        return w;
    }

    /// alpha^t for 0 <= t < 2^m - 1 (larger t wrap).
    Element generator_power(std::uint64_t t) const noexcept {
        if (has_tables()) return {exp_[t % order_]};
        return pow(generator(), t);
    }

    /// Discrete log base alpha; requires tables.
    std::uint64_t log(Element a) const {
        if (a.is_zero()) throw DomainError("log of zero");
        if (!has_tables()) throw PreconditionError("discrete log needs lookup tables (m above table limit)");
        return log_[a.bits];
    }

    Element mul_by_x(Element a) const noexcept {
        std::uint64_t v = std::uint64_t{a.bits} << 1;
        if (v >> m_ & 1) v ^= reduction_;
        return {static_cast<std::uint32_t>(v)};
    }

private:
    bool is_irreducible() const {
        // Rabin: x^(2^m) = x mod f and gcd(x^(2^(m/p)) - x, f) = 1 for primes p | m.
        auto frob_power = [this](int times) {
            std::uint64_t v = detail::poly_mod(2, reduction_);
            for (int i = 0; i < times; ++i) v = detail::poly_mod(detail::clmul(v, v), reduction_);
            return v;
        };
        if (frob_power(m_) != (detail::poly_mod(2, reduction_))) return false;
        for (std::uint64_t p : detail::prime_factors(static_cast<std::uint64_t>(m_))) {
            const std::uint64_t diff = frob_power(m_ / static_cast<int>(p)) ^ (detail::poly_mod(2, reduction_));
            if (detail::poly_gcd(reduction_, diff) != 1) return false;
        }
        return true;
    }

    bool generator_is_primitive() const {
        auto pow_x = [this](std::uint64_t e) {
            std::uint64_t r = 1, b = detail::poly_mod(2, reduction_);
            while (e) {
                if (e & 1) r = detail::poly_mod(detail::clmul(r, b), reduction_);
                b = detail::poly_mod(detail::clmul(b, b), reduction_);
                e >>= 1;
            }
            return r;
        };
        if (pow_x(order_) != 1) return false;
        for (std::uint64_t p : detail::prime_factors(order_))
            if (pow_x(order_ / p) == 1) return false;
        return true;
    }

    void build_tables() {
        log_.assign(order_ + 1, 0);
        exp_.assign(2 * order_, 0);
        Element x = one();
        for (std::uint64_t t = 0; t < order_; ++t) {
            exp_[t] = exp_[t + order_] = x.bits;
            log_[x.bits] = static_cast<std::uint32_t>(t);
            x = mul_by_x(x);
        }
    }

    void build_trace_mask() {
        Element basis{1};
        for (int i = 0; i < m_; ++i, basis = mul_by_x(basis)) {
            Element sum{0}, power = basis;
            for (int j = 0; j < m_; ++j) {
                sum = add(sum, power);
                power = mul(power, power);
            }
            // The trace lies in GF(2): sum is 0 or 1.
            if (sum.bits == 1) trace_mask_ |= 1u << i;
        }
    }

    int m_;
    std::uint32_t reduction_;
    std::uint64_t order_ = 0;
    std::uint32_t mask_ = 0;
    std::uint32_t trace_mask_ = 0;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

/// d = (2^(2k) + 1) / (2^k + 1) modulo 2^m - 1.
inline std::uint64_t decimation_exponent(int m, int k) {
    if (m < 1 || m > 62 || k < 0) throw PreconditionError("decimation_exponent: bad (m, k)");
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    if (n == 1) return 0;
    const std::uint64_t den = (detail::pow_mod(2, static_cast<std::uint64_t>(k), n) + 1) % n;
    const std::uint64_t g = std::gcd(den, n);
    if (g != 1)
        throw PreconditionError("2^k+1 is not invertible modulo 2^m-1 (m=" + std::to_string(m) +
                                ", k=" + std::to_string(k) + ", gcd=" + std::to_string(g) + ")");
    const std::uint64_t num = (detail::pow_mod(2, 2 * static_cast<std::uint64_t>(k), n) + 1) % n;
    const std::uint64_t d = detail::mul_mod(num, detail::mod_inverse(den, n), n);
    if (std::gcd(d, n) != 1) throw PreconditionError("decimation is not coprime to 2^m-1");
    return d;
}

}  // namespace binzeta
