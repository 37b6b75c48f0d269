#pragma once

// Integer L-polynomials L(t) = 1 + s_1 t + ... + s_r t^r = prod (1 - w_j t) and
// the power sums P_s = sum w_j^s, obtained from the coefficients by Newton's
// identities in exact arithmetic. A curve whose zeta numerator is L has
// q^s + 1 - P_s points over the degree-s extension.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "binzeta/errors.hpp"

namespace binzeta {

using BigInt = boost::multiprecision::cpp_int;

class LPolynomial {
public:
    LPolynomial() : coeffs_{1} {}

    explicit LPolynomial(std::vector<BigInt> coeffs, int q = 2, std::optional<int> genus = std::nullopt)
        : coeffs_(std::move(coeffs)), q_(q), genus_(genus) {
        while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty() || coeffs_[0] != 1) throw PreconditionError("L-polynomial must have constant term 1");
    }

    LPolynomial(std::initializer_list<long long> coeffs, int q = 2)
        : LPolynomial(std::vector<BigInt>(coeffs.begin(), coeffs.end()), q) {}

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    int q() const noexcept { return q_; }
    std::optional<int> genus_hint() const noexcept { return genus_; }
    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    /// s_j, zero beyond the degree.
    BigInt coeff(int j) const { return j >= 0 && j <= degree() ? coeffs_[j] : BigInt(0); }

    LPolynomial with_genus(int g) const {
        LPolynomial r = *this;
        r.genus_ = g;
        return r;
    }

    friend bool operator==(const LPolynomial& a, const LPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Descending powers, e.g. "8t^6 - 4t^3 + 1".
    std::string to_string() const {
        std::string out;
        for (int j = degree(); j >= 0; --j) {
            const BigInt& c = coeffs_[j];
            if (c == 0) continue;
            const BigInt mag = abs(c);
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            if (mag != 1 || j == 0) out += mag.str();
            if (j >= 1) out += "t";
            if (j >= 2) out += "^" + std::to_string(j);
        }
        return out;
    }

private:
    std::vector<BigInt> coeffs_;
    int q_ = 2;
    std::optional<int> genus_;
};

inline LPolynomial poly_mul(const LPolynomial& a, const LPolynomial& b) {
    std::vector<BigInt> r(a.degree() + b.degree() + 1, 0);
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) r[i + j] += a.coefficients()[i] * b.coefficients()[j];
    return LPolynomial(std::move(r), a.q());
}

inline LPolynomial operator*(const LPolynomial& a, const LPolynomial& b) { return poly_mul(a, b); }

inline LPolynomial product(const std::vector<LPolynomial>& factors) {
    LPolynomial r;
    for (const auto& f : factors) r = r * f;
    return r;
}

/// Exact quotient L / M over the integers; throws with the remainder otherwise.
inline LPolynomial poly_divide_exact(const LPolynomial& num, const LPolynomial& den) {
    // Constant terms are 1, so long division from the low end stays integral.
    const int n = num.degree(), d = den.degree();
    if (d > n) throw InconsistencyError("poly_divide_exact: divisor degree exceeds dividend degree");
    std::vector<BigInt> rem(num.coefficients());
    std::vector<BigInt> quot(n - d + 1, 0);
    for (int i = 0; i <= n - d; ++i) {
        quot[i] = rem[i];
        if (quot[i] == 0) continue;
        for (int j = 0; j <= d; ++j) rem[i + j] -= quot[i] * den.coefficients()[j];
    }
    std::vector<std::string> nonzero;
    for (int i = n - d + 1; i <= n; ++i)
        if (rem[i] != 0) nonzero.push_back("t^" + std::to_string(i) + ":" + rem[i].str());
    if (!nonzero.empty()) {
        std::string msg = "poly_divide_exact: inexact division, remainder terms";
        for (const auto& s : nonzero) msg += " " + s;
        throw InconsistencyError(msg);
    }
    return LPolynomial(std::move(quot), num.q());
}

/// P_1..P_smax, stored so that sums[s] is P_s.
class PowerSumSequence {
public:
    explicit PowerSumSequence(std::vector<BigInt> values) : values_(std::move(values)) {}
    const BigInt& operator[](int s) const {
        if (s < 1 || s > size())
            throw PreconditionError("power sum index " + std::to_string(s) + " outside [1, " + std::to_string(size()) +
                                    "]");
        return values_[static_cast<std::size_t>(s - 1)];
    }
    int size() const noexcept { return static_cast<int>(values_.size()); }
    const std::vector<BigInt>& values() const noexcept { return values_; }

private:
    std::vector<BigInt> values_;
};

/// Newton's identities: P_j + s_1 P_(j-1) + ... + s_(j-1) P_1 + j s_j = 0 for
/// j <= r and P_j + s_1 P_(j-1) + ... + s_r P_(j-r) = 0 beyond.
inline PowerSumSequence power_sums(const LPolynomial& l, int s_max) {
    if (s_max < 1) throw PreconditionError("power_sums: s_max must be >= 1");
    const int r = l.degree();
    const auto& sig = l.coefficients();
    std::vector<BigInt> p(s_max + 1, 0);
    for (int j = 1; j <= s_max; ++j) {
        BigInt acc = j <= r ? BigInt(j) * sig[j] : BigInt(0);
        for (int i = 1; i <= std::min(j - 1, r); ++i) acc += sig[i] * p[j - i];
        p[j] = -acc;
    }
    p.erase(p.begin());
    return PowerSumSequence(std::move(p));
}

inline BigInt q_power(int q, int s) { return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(s)); }

/// q^s + 1 - P_s.
inline BigInt predicted_count(const LPolynomial& l, int s) {
    if (s < 1) throw PreconditionError("predicted_count: s must be >= 1");
    return q_power(l.q(), s) + 1 - power_sums(l, s)[s];
}

/// Recovers a genus-g L-polynomial from N_1..N_g: Newton's identities give
/// s_1..s_g, the functional equation s_(g+i) = q^i s_(g-i) gives the rest.
inline LPolynomial reconstruct_from_counts(const std::vector<std::int64_t>& counts, int q, int g) {
    if (g < 0 || g > 8) throw PreconditionError("reconstruct_from_counts: genus must be in [0, 8]");
    if (static_cast<int>(counts.size()) < g)
        throw PreconditionError("reconstruct_from_counts: need counts N_1..N_g");
    std::vector<BigInt> p(g + 1, 0), sig(2 * g + 1, 0);
    sig[0] = 1;
    for (int s = 1; s <= g; ++s) p[s] = q_power(q, s) + 1 - counts[s - 1];
    for (int j = 1; j <= g; ++j) {
        BigInt acc = p[j];
        for (int i = 1; i < j; ++i) acc += sig[i] * p[j - i];
        if (acc % j != 0)
            throw InconsistencyError("reconstruct_from_counts: s_" + std::to_string(j) + " = -(" + acc.str() + ")/" +
                                     std::to_string(j) + " is not an integer");
        sig[j] = -acc / j;
    }
    for (int i = 1; i <= g; ++i) sig[g + i] = q_power(q, i) * sig[g - i];
    return LPolynomial(std::move(sig), q, g);
}

struct FunctionalEquationVerdict {
    bool holds = false;
    std::optional<int> first_bad_index;
};

/// s_(2g-j) = q^(g-j) s_j for 0 <= j <= g, and deg L = 2g.
inline FunctionalEquationVerdict functional_equation_check(const LPolynomial& l, int q, int g) {
    if (l.degree() != 2 * g) return {false, l.degree()};
    for (int j = 0; j <= g; ++j)
        if (l.coeff(2 * g - j) != q_power(q, g - j) * l.coeff(j)) return {false, j};
    return {true, std::nullopt};
}

struct ResidueVerdict {
    bool holds = false;
    /// Every s_j with r not dividing j is zero (the structural reason).
    bool coefficients_vanish = false;
    /// First m <= bound with r not dividing m and P_m != 0.
    std::optional<int> first_failure;
    PowerSumSequence sums{{}};
};

/// Checks P_m(L) = 0 for every m <= bound not divisible by r, and that L is a
/// polynomial in t^r.
inline ResidueVerdict vanishing_residue_check(const LPolynomial& l, int r, int bound) {
    if (r < 1 || bound < 1) throw PreconditionError("vanishing_residue_check: r and bound must be >= 1");
    ResidueVerdict v;
    v.coefficients_vanish = true;
    for (int j = 1; j <= l.degree(); ++j)
        if (j % r != 0 && l.coeff(j) != 0) v.coefficients_vanish = false;
    v.sums = power_sums(l, bound);
    for (int m = 1; m <= bound; ++m)
        if (m % r != 0 && v.sums[m] != 0) {
            v.first_failure = m;
            break;
        }
    v.holds = !v.first_failure.has_value();
    return v;
}

/// Moduli of the reciprocal roots w_j, i.e. the roots of t^r L(1/t). Companion
/// eigenvalues refined by Newton steps in long double.
inline std::vector<double> reciprocal_root_moduli(const LPolynomial& l) {
    const int r = l.degree();
    if (r == 0) return {};
    std::vector<long double> c(r + 1);  // monic: t^r + s_1 t^(r-1) + ... + s_r
    for (int j = 0; j <= r; ++j) c[j] = static_cast<long double>(l.coeff(j).convert_to<long double>());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(r, r);
    for (int j = 0; j < r; ++j) companion(0, j) = -static_cast<double>(c[j + 1]);
    for (int i = 1; i < r; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<double> out;
    for (const auto& ev : solver.eigenvalues()) {
        std::complex<long double> z(ev.real(), ev.imag());
        for (int it = 0; it < 8; ++it) {
            std::complex<long double> val = 1, der = 0;
            for (int j = 1; j <= r; ++j) {
                der = der * z + val;
                val = val * z + c[j];
            }
            if (std::abs(der) == 0) break;
            z -= val / der;
        }
        out.push_back(static_cast<double>(std::abs(z)));
    }
    return out;
}

/// |P_s| <= r q^(s/2) (1% slack) for 1 <= s <= s_max.
inline bool weil_bound_holds(const LPolynomial& l, int s_max) {
    const auto sums = power_sums(l, s_max);
    for (int s = 1; s <= s_max; ++s) {
        const long double bound = 1.01L * l.degree() * std::pow(static_cast<long double>(l.q()), s / 2.0L);
        if (std::fabs(sums[s].convert_to<long double>()) > bound) return false;
    }
    return true;
}

// L-polynomial files: one factor per line, coefficients s_0 s_1 ... as
// space-separated integers; '#' begins a comment. The polynomial is the
// product of the factors.

inline std::vector<LPolynomial> parse_lpoly_factors(std::istream& in, int q = 2) {
    std::vector<LPolynomial> factors;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<BigInt> coeffs;
        std::string tok;
        while (ls >> tok) {
            try {
                coeffs.emplace_back(tok);
            } catch (const std::exception&) {
                throw ParseError("L-polynomial line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
            }
        }
        if (coeffs.empty()) continue;
        try {
            factors.emplace_back(std::move(coeffs), q);
        } catch (const PreconditionError& e) {
            throw ParseError("L-polynomial line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (factors.empty()) throw ParseError("L-polynomial file has no factors");
    return factors;
}

inline std::vector<LPolynomial> load_lpoly_factors(const std::string& path, int q = 2) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open L-polynomial file " + path);
    return parse_lpoly_factors(in, q);
}

inline void write_lpoly_factors(std::ostream& out, const std::vector<LPolynomial>& factors,
                                const std::string& comment = {}) {
    if (!comment.empty()) out << "# " << comment << "\n";
    for (const auto& f : factors) {
        for (int j = 0; j <= f.degree(); ++j) out << (j ? " " : "") << f.coefficients()[j];
        out << "\n";
    }
}

struct LPolyCatalogEntry {
    std::string name;
    std::string description;
    std::vector<LPolynomial> factors;  ///< as printed
    std::optional<int> genus;

    LPolynomial expanded() const {
        LPolynomial p = product(factors);
        return genus ? p.with_genus(*genus) : p;
    }
};

namespace detail {

/// Builds s_0..s_deg from (exponent, coefficient) pairs.
inline LPolynomial sparse_lpoly(std::initializer_list<std::pair<int, long long>> terms) {
    int deg = 0;
    for (auto [e, c] : terms) deg = std::max(deg, e);
    std::vector<BigInt> s(deg + 1, 0);
    for (auto [e, c] : terms) s[e] += c;
    return LPolynomial(std::move(s));
}

}  // namespace detail

inline const std::vector<LPolyCatalogEntry>& lpoly_catalog() {
    using detail::sparse_lpoly;
    static const std::vector<LPolyCatalogEntry> catalog = [] {
        const LPolynomial a24 = sparse_lpoly({{24, 4096}, {21, 512}, {18, 128}, {15, -128}, {12, -16}, {9, -16},
                                              {6, 2}, {3, 1}, {0, 1}});
        const LPolynomial b30 = sparse_lpoly({{30, 32768}, {27, -4096}, {24, -2048}, {21, -1280}, {18, 256}, {15, 96},
                                              {12, 32}, {9, -20}, {6, -4}, {3, -1}, {0, 1}});
        const LPolynomial l2{1, 1, 2};
        const LPolynomial c6 = sparse_lpoly({{6, 8}, {3, 2}, {0, 1}});
        const LPolynomial l1prime = sparse_lpoly({{60, 1073741824}, {57, 268435456}, {54, 83886080},
                                                  {51, -100663296}, {48, -27262976}, {45, -9437184},
                                                  {42, 4784128},    {39, 1179648},   {36, 573440},
                                                  {33, -212992},    {30, -41984},    {27, -26624},
                                                  {24, 8960},       {21, 2304},      {18, 1168},
                                                  {15, -288},       {12, -104},      {9, -48},
                                                  {6, 5},           {3, 2},          {0, 1}});
        const LPolynomial l4{1, 1, 0, 2, 4};
        std::vector<LPolyCatalogEntry> c;
        c.push_back({"L1", "numerator of the zeta function of the nonsingular model of p1tilde", {a24, b30, l2, c6}, 31});
        c.push_back({"L2", "numerator for the Kloosterman cubic", {l2}, 1});
        c.push_back({"L3",
                     "numerator for the nonsingular model of p3",
                     {LPolynomial{1, 2, 2}, LPolynomial{1, -2, 2, -4, 4}, l4},
                     5});
        c.push_back({"L4", "numerator for the nonsingular model of p4", {l4}, 2});
        c.push_back({"L1prime", "L1 / L2, expanded", {l1prime}, 30});
        c.push_back({"L3prime", "L3 / L4", {sparse_lpoly({{6, 8}, {3, -4}, {0, 1}})}, 3});
        c.push_back({"singular_extra",
                     "(t^2 + t + 1)^2 (t - 1)^4: extra factor of the singular model of p1tilde",
                     {LPolynomial{1, 1, 1}, LPolynomial{1, 1, 1}, LPolynomial{1, -1}, LPolynomial{1, -1},
                      LPolynomial{1, -1}, LPolynomial{1, -1}},
                     std::nullopt});
        return c;
    }();
    return catalog;
}

inline const LPolyCatalogEntry& catalog_lpoly(const std::string& name) {
    for (const auto& e : lpoly_catalog())
        if (e.name == name) return e;
    throw PreconditionError("unknown catalog L-polynomial '" + name + "'");
}

/// P_s of the extra factor (t^2 + t + 1)^2 (t - 1)^4 carried by the singular model.
inline BigInt singular_correction_sums(int s) {
    if (s < 1) throw PreconditionError("singular_correction_sums: s must be >= 1");
    return power_sums(catalog_lpoly("singular_extra").expanded(), s)[s];
}

}  // namespace binzeta
