#pragma once

// Sparse polynomials over F2 in x, y, z and projective point counting over
// GF(2^s). Coefficients are implicit: a monomial is either present or not, and
// adding a present monomial cancels it.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "binzeta/errors.hpp"
#include "binzeta/gf2m.hpp"
#include "binzeta/parallel.hpp"

namespace binzeta {

struct Monomial {
    std::uint32_t x = 0, y = 0, z = 0;

    std::uint32_t degree() const noexcept { return x + y + z; }
    friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
};

enum class Variable { x, y, z };

class TrivariatePoly {
public:
    TrivariatePoly() = default;
    TrivariatePoly(std::initializer_list<Monomial> terms) {
        for (const auto& t : terms) toggle(t);
    }

    static TrivariatePoly one() { return {Monomial{0, 0, 0}}; }

    /// Adds a monomial; a second copy cancels the first.
    void toggle(const Monomial& t) {
        if (auto it = terms_.find(t); it != terms_.end())
            terms_.erase(it);
        else
            terms_.insert(t);
    }

    const std::set<Monomial>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.degree());
        return d;
    }

    bool is_homogeneous() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const Monomial& t) { return t.degree() == terms_.begin()->degree(); });
    }

    std::uint32_t degree_in(Variable v) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, v == Variable::x ? t.x : v == Variable::y ? t.y : t.z);
        return d;
    }

    friend TrivariatePoly operator+(TrivariatePoly a, const TrivariatePoly& b) {
        for (const auto& t : b.terms_) a.toggle(t);
        return a;
    }

    friend TrivariatePoly operator*(const TrivariatePoly& a, const TrivariatePoly& b) {
        TrivariatePoly r;
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) r.toggle({s.x + t.x, s.y + t.y, s.z + t.z});
        return r;
    }

    friend bool operator==(const TrivariatePoly&, const TrivariatePoly&) = default;

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        // Descending order reads like the printed curves.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            std::string mono;
            auto var = [&](char c, std::uint32_t e) {
                if (e == 0) return;
                mono += c;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            var('x', it->x);
            var('y', it->y);
            var('z', it->z);
            out += mono.empty() ? "1" : mono;
        }
        return out;
    }

private:
    std::set<Monomial> terms_;
};

inline TrivariatePoly poly_multiply(const TrivariatePoly& p, const TrivariatePoly& q) { return p * q; }

inline TrivariatePoly poly_power(TrivariatePoly base, unsigned e) {
    TrivariatePoly r = TrivariatePoly::one();
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

/// z^degree * f(x/z, y/z) for a polynomial in x and y only.
inline TrivariatePoly homogenize(const TrivariatePoly& f, std::uint32_t degree) {
    TrivariatePoly out;
    for (const auto& t : f.terms()) {
        if (t.z != 0) throw PreconditionError("homogenize: input must not involve z");
        if (t.x + t.y > degree)
            throw PreconditionError("homogenize: degree " + std::to_string(degree) + " below term degree " +
                                    std::to_string(t.x + t.y));
        out.toggle({t.x, t.y, degree - t.x - t.y});
    }
    return out;
}

/// P(x, y, 1) as a polynomial in x and y.
inline TrivariatePoly dehomogenize(const TrivariatePoly& p) {
    TrivariatePoly out;
    for (const auto& t : p.terms()) out.toggle({t.x, t.y, 0});
    return out;
}

/// Formal partial derivative in characteristic 2: odd exponents drop by one,
/// terms with even exponent vanish.
inline TrivariatePoly formal_derivative(const TrivariatePoly& p, Variable v) {
    TrivariatePoly out;
    for (auto t : p.terms()) {
        std::uint32_t& e = v == Variable::x ? t.x : v == Variable::y ? t.y : t.z;
        if (e % 2 == 0) continue;
        --e;
        out.toggle(t);
    }
    return out;
}

struct ProjectivePoint {
    Element x, y, z;
    friend constexpr auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
};

inline Element evaluate(const TrivariatePoly& p, const ProjectivePoint& pt, const Field& f) {
    Element acc{0};
    for (const auto& t : p.terms())
        acc = Field::add(acc, f.mul(f.mul(f.pow(pt.x, t.x), f.pow(pt.y, t.y)), f.pow(pt.z, t.z)));
    return acc;
}

namespace detail {

inline void check_curve_cap(int s, int cap, const std::string& what) {
    if (s > cap)
        throw CostRefusal(what + ": s=" + std::to_string(s) + " exceeds cap " + std::to_string(cap) + " (cost ~4^" +
                          std::to_string(s) + " evaluations); raise the cap explicitly");
}

inline void require_homogeneous(const TrivariatePoly& p) {
    if (!p.is_homogeneous()) throw PreconditionError("projective counting needs a homogeneous polynomial");
}

/// Calls visit(point) for one representative of every point of P^2(GF(2^s)):
/// (x : y : 1), then (x : 1 : 0), then (1 : 0 : 0).
template <typename Visit>
void for_each_projective_point(const Field& f, Visit visit) {
    for (std::uint32_t x = 0; x < f.size(); ++x)
        for (std::uint32_t y = 0; y < f.size(); ++y) visit(ProjectivePoint{{x}, {y}, {1}});
    for (std::uint32_t x = 0; x < f.size(); ++x) visit(ProjectivePoint{{x}, {1}, {0}});
    visit(ProjectivePoint{{1}, {0}, {0}});
}

}  // namespace detail

/// Projective zeros over GF(2^s) by evaluating P at every point.
inline std::int64_t count_projective_points(const TrivariatePoly& p, const Field& f, int cap = 12) {
    detail::require_homogeneous(p);
    detail::check_curve_cap(f.degree(), cap, "count_projective_points");
    const std::uint64_t q = f.size();
    // Chart z = 1 is split by x across workers; the line at infinity is small.
    std::int64_t count = parallel_sum(q, [&](std::uint64_t x) -> std::int64_t {
        std::int64_t c = 0;
        for (std::uint32_t y = 0; y < q; ++y)
            c += evaluate(p, {{static_cast<std::uint32_t>(x)}, {y}, {1}}, f).is_zero();
        return c;
    });
    for (std::uint32_t x = 0; x < q; ++x) count += evaluate(p, {{x}, {1}, {0}}, f).is_zero();
    count += evaluate(p, {{1}, {0}, {0}}, f).is_zero();
    return count;
}

/// P = A(x,z) y^2 + B(x,z) y + C(x,z).
struct QuadraticInY {
    TrivariatePoly a, b, c;
};

inline QuadraticInY split_quadratic_in_y(const TrivariatePoly& p) {
    QuadraticInY q;
    for (auto t : p.terms()) {
        if (t.y > 2) throw PreconditionError("polynomial has degree > 2 in y");
        TrivariatePoly& part = t.y == 2 ? q.a : t.y == 1 ? q.b : q.c;
        part.toggle({t.x, 0, t.z});
    }
    return q;
}

/// Same count as count_projective_points for curves of degree <= 2 in y, but
/// solves A y^2 + B y + C = 0 on the chart z = 1 per x: with A, B != 0 there
/// are two roots iff Tr(A C / B^2) = 0. Cost ~2^s instead of 4^s.
inline std::int64_t count_projective_points_quadratic(const TrivariatePoly& p, const Field& f, int cap = 24) {
    detail::require_homogeneous(p);
    if (f.degree() > cap)
        throw CostRefusal("quadratic counter: s=" + std::to_string(f.degree()) + " exceeds cap " +
                          std::to_string(cap));
    const auto parts = split_quadratic_in_y(p);
    const std::uint64_t q = f.size();
    std::int64_t count = parallel_sum(q, [&](std::uint64_t xi) -> std::int64_t {
        const ProjectivePoint pt{{static_cast<std::uint32_t>(xi)}, {1}, {1}};
        const Element a = evaluate(parts.a, pt, f), b = evaluate(parts.b, pt, f), c = evaluate(parts.c, pt, f);
        if (a.is_zero() && b.is_zero()) return c.is_zero() ? static_cast<std::int64_t>(q) : 0;
        if (a.is_zero() || b.is_zero()) return 1;  // linear, or y^2 = C/A with squaring bijective
        return f.trace(f.mul(f.mul(a, c), f.inv(f.square(b)))) == 0 ? 2 : 0;
    });
    for (std::uint32_t x = 0; x < q; ++x) count += evaluate(p, {{x}, {1}, {0}}, f).is_zero();
    count += evaluate(p, {{1}, {0}, {0}}, f).is_zero();
    return count;
}

/// All projective zeros over GF(2^s), in chart order.
inline std::vector<ProjectivePoint> projective_zeros(const TrivariatePoly& p, const Field& f, int cap = 12) {
    detail::require_homogeneous(p);
    detail::check_curve_cap(f.degree(), cap, "projective_zeros");
    std::vector<ProjectivePoint> out;
    detail::for_each_projective_point(f, [&](const ProjectivePoint& pt) {
        if (evaluate(p, pt, f).is_zero()) out.push_back(pt);
    });
    return out;
}

/// Points over GF(2^s) where P and its three formal partials vanish.
inline std::vector<ProjectivePoint> singular_points(const TrivariatePoly& p, const Field& f, int cap = 12) {
    detail::require_homogeneous(p);
    detail::check_curve_cap(f.degree(), cap, "singular_points");
    const TrivariatePoly dx = formal_derivative(p, Variable::x), dy = formal_derivative(p, Variable::y),
                         dz = formal_derivative(p, Variable::z);
    std::vector<ProjectivePoint> out;
    detail::for_each_projective_point(f, [&](const ProjectivePoint& pt) {
        if (evaluate(p, pt, f).is_zero() && evaluate(dx, pt, f).is_zero() && evaluate(dy, pt, f).is_zero() &&
            evaluate(dz, pt, f).is_zero())
            out.push_back(pt);
    });
    return out;
}

// Curve files: one monomial per line as "a b c"; '#' begins a comment.

inline TrivariatePoly parse_curve(std::istream& in) {
    TrivariatePoly p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long a = -1, b = -1, c = -1;
        std::string extra;
        if (!(ls >> a >> b >> c) || (ls >> extra) || a < 0 || b < 0 || c < 0)
            throw ParseError("curve line " + std::to_string(lineno) + ": expected three non-negative integers");
        p.toggle({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)});
    }
    return p;
}

inline TrivariatePoly load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve file " + path);
    return parse_curve(in);
}

inline void write_curve(std::ostream& out, const TrivariatePoly& p, const std::string& comment = {}) {
    if (!comment.empty()) out << "# " << comment << "\n";
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) out << it->x << ' ' << it->y << ' ' << it->z << '\n';
}

/// f_k(x, y) = x^(2^k) + 1 + (y^2 + y)(x^(2^2k) + x^(2^2k - 2^k + 1) + x^(2^k) + x),
/// the cleared-denominator form of f(x) = y^2 + y.
inline TrivariatePoly kprime_affine_curve(unsigned k) {
    const std::uint32_t a = 1u << k, b = 1u << (2 * k);
    TrivariatePoly p{{a, 0, 0}, {0, 0, 0}};
    for (std::uint32_t e : {b, b - a + 1, a, 1u}) {
        p.toggle({e, 2, 0});
        p.toggle({e, 1, 0});
    }
    return p;
}

/// x^(2^k + 2) + (y^2 + y) x + 1, from x^(2^k+1) + 1/x = y^2 + y.
inline TrivariatePoly g_affine_curve(unsigned k) {
    return {{(1u << k) + 2, 0, 0}, {1, 2, 0}, {1, 1, 0}, {0, 0, 0}};
}

/// x^2 + 1 + (y^2 + y) x, from x + 1/x = y^2 + y.
inline TrivariatePoly kloosterman_affine_curve() { return {{2, 0, 0}, {0, 0, 0}, {1, 2, 0}, {1, 1, 0}}; }

/// How the projective count of a catalog curve relates to the point count of
/// its nonsingular model.
enum class Correction {
    exact,                ///< count = n_hat
    minus_one,            ///< count = n_hat - 1
    minus_singular_pair,  ///< count = n_hat - S_s, S_s = 2 if 3 does not divide s, else 8
    none,                 ///< no L-polynomial attached
};

/// 2^(1 + delta) with delta = 0 when 3 does not divide s and 2 otherwise.
inline std::int64_t s1_correction(int s) { return std::int64_t{1} << (1 + (s % 3 == 0 ? 2 : 0)); }

inline std::int64_t correction_offset(Correction c, int s) {
    switch (c) {
        case Correction::exact: return 0;
        case Correction::minus_one: return 1;
        case Correction::minus_singular_pair: return s1_correction(s);
        case Correction::none: break;
    }
    throw PreconditionError("curve has no L-polynomial correction");
}

struct CurveCatalogEntry {
    std::string name;
    std::string description;
    TrivariatePoly polynomial;
    /// Singular points stated for the curve (over F2); nullopt when unstated.
    std::optional<std::vector<ProjectivePoint>> expected_singular_points;
    std::string l_polynomial_name;  ///< empty when Correction::none
    Correction correction = Correction::none;
    int genus = 0;
};

namespace detail {

/// The 29-term nontrivial component of fbar_3, transcribed term by term.
inline TrivariatePoly p1_tilde_polynomial() {
    return {{56, 2, 0},  {56, 1, 1},  {49, 2, 7},  {49, 1, 8},  {48, 2, 8},  {48, 1, 9},  {41, 2, 15}, {41, 1, 16},
            {40, 2, 16}, {40, 1, 17}, {33, 2, 23}, {33, 1, 24}, {32, 2, 24}, {32, 1, 25}, {25, 2, 31}, {25, 1, 32},
            {24, 2, 32}, {24, 1, 33}, {17, 2, 39}, {17, 1, 40}, {16, 2, 40}, {16, 1, 41}, {9, 2, 47},  {9, 1, 48},
            {8, 2, 48},  {8, 1, 49},  {1, 2, 55},  {1, 1, 56},  {0, 0, 58}};
}

}  // namespace detail

inline const std::vector<CurveCatalogEntry>& curve_catalog() {
    static const std::vector<CurveCatalogEntry> catalog = [] {
        const ProjectivePoint point_at_y{{0}, {1}, {0}};
        std::vector<CurveCatalogEntry> c;
        c.push_back({"fbar3",
                     "x^8 z^58 + z^66 + (y^2 + yz)(x^64 + x^57 z^7 + x^8 z^56 + x z^63), from K'_m with k = 3",
                     {{8, 0, 58}, {0, 0, 66}, {64, 2, 0}, {64, 1, 1}, {57, 2, 7}, {57, 1, 8}, {8, 2, 56}, {8, 1, 57},
                      {1, 2, 63}, {1, 1, 64}},
                     std::nullopt,
                     "",
                     Correction::none,
                     0});
        c.push_back({"p1tilde", "nontrivial component of fbar3 (degree 58, 29 terms)", detail::p1_tilde_polynomial(),
                     std::nullopt, "L1", Correction::minus_singular_pair, 31});
        c.push_back({"kloosterman", "x^2 z + z^3 + (y^2 + yz) x, from x + 1/x = y^2 + y",
                     {{2, 0, 1}, {0, 0, 3}, {1, 2, 0}, {1, 1, 1}}, std::vector<ProjectivePoint>{}, "L2",
                     Correction::exact, 1});
        c.push_back({"p3", "x^10 + (y^2 + yz) x z^7 + z^10, from x^9 + 1/x = y^2 + y",
                     {{10, 0, 0}, {1, 2, 7}, {1, 1, 8}, {0, 0, 10}}, std::vector<ProjectivePoint>{point_at_y}, "L3",
                     Correction::minus_one, 5});
        c.push_back({"p4", "x^4 + x y^2 z + x y z^2 + z^4, from x^3 + 1/x = y^2 + y",
                     {{4, 0, 0}, {1, 2, 1}, {1, 1, 2}, {0, 0, 4}}, std::vector<ProjectivePoint>{point_at_y}, "L4",
                     Correction::minus_one, 2});
        return c;
    }();
    return catalog;
}

inline const CurveCatalogEntry& catalog_curve(const std::string& name) {
    for (const auto& e : curve_catalog())
        if (e.name == name) return e;
    throw PreconditionError("unknown catalog curve '" + name + "'");
}

}  // namespace binzeta
