// Per-prime reduction analysis of family curves: Kodaira index, split or
// non-split twist, singular-point coordinates, component-group classes,
// and the combinatorial shape of the special fibers of the minimal model.
#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semiabel/arith.hpp"
#include "semiabel/points.hpp"
#include "semiabel/weierstrass.hpp"

namespace semiabel {

enum class Twist { good, split, nonsplit };

struct FiberReport {
    Int p;
    unsigned long kodaira_v = 0;
    Twist twist = Twist::good;
    std::optional<std::pair<Int, Int>> singular_point;  // residues mod p
    bool P_component_trivial = true;
    // cached Legendre evaluations backing the twist verdict
    int legendre_4m1 = 0;
    int legendre_minus2 = 0;
};

/// Primes where the fiber is additive: divisors of gcd(4m+1, n).  Accepts
/// invalid pairs on purpose; valid family curves always return empty.
inline std::vector<Int> additive_primes(const Int& m, const Int& n) {
    Int g = gcd(4 * m + 1, n);
    std::vector<Int> primes;
    if (g == 1 || g == 0) return primes;
    for (const auto& [p, e] : factor(g).factors) primes.push_back(p);
    return primes;
}

/// v = 2 val_p(n) + val_p((4m+1)^2 - 64n); v = 0 at p = 2 since Delta is odd.
inline unsigned long kodaira(const FamilyCurve& c, const Int& p) {
    if (p == 2) return 0;
    return 2 * (c.n() % p == 0 ? valuation(p, c.n()) : 0) +
           (c.core() % p == 0 ? valuation(p, c.core()) : 0);
}

struct TwistVerdict {
    Twist twist;
    std::pair<Int, Int> singular_point;
    int legendre_4m1;
    int legendre_minus2;
};

inline TwistVerdict twist_kind(const FamilyCurve& c, const Int& p) {
    if (p == 2) throw std::invalid_argument("twist is undefined at p = 2 (good reduction)");
    if (kodaira(c, p) == 0) throw std::invalid_argument("twist is undefined at a good prime");
    Int q = 4 * c.m() + 1;
    TwistVerdict out;
    out.legendre_4m1 = legendre(q, p);
    out.legendre_minus2 = legendre(Int(-2), p);
    Int inv;
    if (c.n() % p == 0) {
        out.singular_point = {Int(0), Int(0)};
        out.twist = out.legendre_4m1 == 1 ? Twist::split : Twist::nonsplit;
    } else {
        // x = -(4m+1)/8, y = (4m+1)/16 mod p
        Int eight = 8, sixteen = 16;
        mpz_invert(inv.get_mpz_t(), eight.get_mpz_t(), p.get_mpz_t());
        Int x = (-q * inv) % p;
        if (x < 0) x += p;
        mpz_invert(inv.get_mpz_t(), sixteen.get_mpz_t(), p.get_mpz_t());
        Int y = (q * inv) % p;
        if (y < 0) y += p;
        out.singular_point = {x, y};
        // untwisted iff -2(4m+1) is a square mod p
        out.twist = out.legendre_4m1 * out.legendre_minus2 == 1 ? Twist::split : Twist::nonsplit;
    }
    return out;
}

/// Whether the point pt (with p-integral coordinates) meets the singular
/// point of the fiber at p; nontrivial component class exactly then.
inline bool point_component_trivial(const FamilyCurve& c, const CurvePoint& pt, const Int& p) {
    if (pt.inf) return true;
    if (kodaira(c, p) == 0) return true;
    if (p == 2) return true;  // Delta odd: never a bad fiber at 2
    TwistVerdict tv = twist_kind(c, p);
    FiniteCurve fc(c.equation(), p);
    return !(fc.reduce_rat(pt.x) == tv.singular_point.first &&
             fc.reduce_rat(pt.y) == tv.singular_point.second);
}

/// P = (0,0) has nontrivial class in Phi_p exactly when p | n.
inline bool component_class_P_trivial(const FamilyCurve& c, const Int& p) {
    return c.n() % p != 0;
}

inline bool is_narrow_P(const FamilyCurve& c) { return c.n() == 1 || c.n() == -1; }

inline FiberReport fiber_report(const FamilyCurve& c, const Int& p) {
    FiberReport r;
    r.p = p;
    r.kodaira_v = kodaira(c, p);
    r.P_component_trivial = component_class_P_trivial(c, p);
    if (r.kodaira_v > 0 && p != 2) {
        TwistVerdict tv = twist_kind(c, p);
        r.twist = tv.twist;
        r.singular_point = tv.singular_point;
        r.legendre_4m1 = tv.legendre_4m1;
        r.legendre_minus2 = tv.legendre_minus2;
    }
    return r;
}

/// The reported singular point must satisfy x = -2y, 12y^2 - (4m+1)y + n = 0,
/// and the curve equation, all mod p.
inline bool singular_point_check(const FamilyCurve& c, const Int& p) {
    TwistVerdict tv = twist_kind(c, p);
    const Int &x = tv.singular_point.first, &y = tv.singular_point.second;
    Int q = 4 * c.m() + 1;
    if ((x + 2 * y) % p != 0) return false;
    if ((12 * y * y - q * y + c.n()) % p != 0) return false;
    Int curve = y * y + x * y - x * x * x - c.m() * x * x - c.n() * x;
    return curve % p == 0;
}

// Special fiber of the minimal model as a combinatorial chain: component
// field degrees, whether a component is pinched (an etale pair of points
// glued to one rational point), and intersection degrees.
enum class ComponentKind { line, pinched_line };

struct FiberChain {
    unsigned long v;
    Twist twist;
    std::vector<std::pair<int, ComponentKind>> components;  // (field degree, kind)
    std::vector<int> intersections;                         // field degrees
};

inline FiberChain fiber_chain(unsigned long v, Twist twist) {
    if (v == 0) throw std::invalid_argument("fiber chain needs v >= 1");
    if (twist == Twist::good) throw std::invalid_argument("fiber chain needs a bad fiber");
    FiberChain ch{v, twist, {}, {}};
    if (twist == Twist::split) {
        if (v == 1) {
            ch.components.push_back({1, ComponentKind::pinched_line});
            return ch;
        }
        for (unsigned long i = 0; i < v; ++i) ch.components.push_back({1, ComponentKind::line});
        ch.intersections.assign(v, 1);
        return ch;
    }
    // nonsplit: Frobenius acts on the v-cycle by i -> -i
    if (v == 1) {
        ch.components.push_back({1, ComponentKind::pinched_line});
        return ch;
    }
    unsigned long w = (v % 2 == 1) ? (v + 1) / 2 : (v + 2) / 2;
    ch.components.push_back({1, ComponentKind::line});  // C_0, the origin component
    for (unsigned long i = 1; i + 1 < w; ++i) ch.components.push_back({2, ComponentKind::line});
    if (v % 2 == 1)
        ch.components.push_back({2, ComponentKind::pinched_line});  // fixed node glues it
    else
        ch.components.push_back({1, ComponentKind::line});  // second fixed component
    ch.intersections.assign(w - 1, 2);
    return ch;
}

}  // namespace semiabel
