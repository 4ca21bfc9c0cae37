// Torsion structure of family curves: the witness integer d, coordinates of
// P, Q, P+Q, detection of order-four points, and the mu_2-quotient 2-isogeny
// in closed form with the intermediate Velu coefficients as a second route.
#pragma once

#include <optional>
#include <stdexcept>

#include "semiabel/arith.hpp"
#include "semiabel/points.hpp"
#include "semiabel/reduction.hpp"
#include "semiabel/weierstrass.hpp"

namespace semiabel {

/// The unique integer root d of 16 d^2 + (4m+1) d + n = 0, found by scanning
/// signed divisors of n.  The root product n/16 is never integral, so a
/// second integer root is impossible.
inline std::optional<Int> find_d(const FamilyCurve& c) {
    Int q = 4 * c.m() + 1;
    std::optional<Int> found;
    for (const Int& e : positive_divisors(c.n()))
        for (int s : {1, -1}) {
            Int d = s * e;
            if (16 * d * d + q * d + c.n() == 0) {
                if (found && *found != d)
                    throw std::logic_error("witness equation cannot have two integer roots");
                found = d;
            }
        }
    return found;
}

/// (4m+1)^2 - 64n is a perfect square exactly when every Kodaira index is
/// even; the discriminant is then d^2 (4m+1+16d)^2 (4m+1+32d)^2.
inline bool all_even_kodaira(const FamilyCurve& c) {
    if (c.core() < 0) return false;
    return mpz_perfect_square_p(c.core().get_mpz_t()) != 0;
}

struct TorsionProfile {
    CurvePoint P = CurvePoint::affine(Rat(0), Rat(0));
    std::optional<Int> d;
    std::optional<CurvePoint> Q;   // (4d, -2d)
    std::optional<CurvePoint> PQ;  // (-(4m+1+16d)/4, (4m+1+16d)/8)
    std::optional<CurvePoint> R;   // order four, 2R = P
};

/// Affine rational points R with 2R = P = (0,0).  Doubling to the origin
/// forces x^2 = n and 4m+1+8x to be an odd square t^2, with y = x(t-1)/2.
inline std::optional<CurvePoint> find_order_four(const FamilyCurve& c) {
    if (c.n() < 0 || mpz_perfect_square_p(c.n().get_mpz_t()) == 0) return std::nullopt;
    Int s;
    mpz_sqrt(s.get_mpz_t(), c.n().get_mpz_t());
    for (const Int& x : {s, Int(-s)}) {
        Int disc = 4 * c.m() + 1 + 8 * x;
        if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
        Int t;
        mpz_sqrt(t.get_mpz_t(), disc.get_mpz_t());
        // disc is odd, so t is odd and lambda = (t-1)/2 is integral
        Int lambda = (t - 1) / 2;
        CurvePoint R = CurvePoint::affine(Rat(x), Rat(lambda * x));
        WeierstrassEquation eq = c.equation();
        if (!on_curve(eq, R)) continue;
        if (order_of(eq, R) != 4) continue;
        CurvePoint twoR = add(eq, R, R);
        if (!(twoR == CurvePoint::affine(Rat(0), Rat(0)))) continue;
        return R;
    }
    return std::nullopt;
}

inline TorsionProfile torsion_profile(const FamilyCurve& c) {
    TorsionProfile t;
    t.d = find_d(c);
    if (t.d) {
        const Int& d = *t.d;
        Int q16 = 4 * c.m() + 1 + 16 * d;
        t.Q = CurvePoint::affine(Rat(4 * d), Rat(-2 * d));
        t.PQ = CurvePoint::affine(make_rat(-q16, 4), make_rat(q16, 8));
        WeierstrassEquation eq = c.equation();
        for (const CurvePoint* pt : {&*t.Q, &*t.PQ}) {
            require_on_curve(eq, *pt);
            if (order_of(eq, *pt) != 2) throw std::logic_error("torsion section not of order 2");
        }
    }
    t.R = find_order_four(c);
    return t;
}

struct QuotientResult {
    FamilyCurve source;
    Int d;
    FamilyCurve target;  // (m + 6d, d^2)
};

inline void require_witness(const FamilyCurve& c, const Int& d) {
    if (16 * d * d + (4 * c.m() + 1) * d + c.n() != 0)
        throw std::invalid_argument("d does not satisfy the witness equation");
}

/// Quotient by the mu_2 generated by P+Q, in closed form.
inline QuotientResult velu_quotient(const FamilyCurve& c, const Int& d) {
    require_witness(c, d);
    return {c, d, FamilyCurve::make(c.m() + 6 * d, d * d)};
}

/// The intermediate Velu coefficients of the quotient equation
/// y^2 + xy = x^3 + m x^2 + a4 x + a6 before normalization.
inline std::pair<Rat, Rat> velu_intermediate(const Int& m, const Int& d) {
    Rat mr(m), dr(d);
    Rat a4 = -5 * mr * mr - 64 * mr * dr - make_rat(5, 2) * mr - 176 * dr * dr - 16 * dr -
             make_rat(5, 16);
    Rat a6 = 3 * mr * mr * mr + 64 * mr * mr * dr + make_rat(9, 4) * mr * mr +
             432 * mr * dr * dr + 32 * mr * dr + make_rat(9, 16) * mr + 896 * dr * dr * dr +
             108 * dr * dr + 4 * dr + make_rat(3, 64);
    return {a4, a6};
}

/// Chase the intermediate equation through the translation t = -m/2 - 4d - 1/8,
/// the s = 1/2 shear, and the u = 2 rescale; must land on (m+6d, d^2).
inline WeierstrassEquation quotient_via_intermediate(const Int& m, const Int& d) {
    auto [a4, a6] = velu_intermediate(m, d);
    WeierstrassEquation eq{Rat(1), Rat(m), Rat(0), a4, a6};
    Rat t0 = make_rat(-m, 2) - 4 * Rat(d) - make_rat(1, 8);
    eq = apply_change(eq, CoordinateChange{Rat(1), -2 * t0, Rat(0), t0});
    eq = apply_change(eq, CoordinateChange{Rat(1), Rat(0), make_rat(1, 2), Rat(0)});
    eq = apply_change(eq, CoordinateChange{Rat(2), Rat(0), Rat(0), Rat(0)});
    return eq;
}

/// Move Q to the origin: (m, n) -> (m + 12d, d(4m+1+32d)), realized by the
/// coordinate change (u, r, s, t) = (1, 4d, 0, -2d).
inline FamilyCurve translate_to_Q(const FamilyCurve& c, const Int& d) {
    require_witness(c, d);
    return FamilyCurve::make(c.m() + 12 * d, d * (4 * c.m() + 1 + 32 * d));
}

/// P+Q is nontrivial in Phi_p exactly when p | (4m+1+16d)(4m+1+32d);
/// that product is odd, so p = 2 is always trivial.
inline bool pq_component_class_trivial(const FamilyCurve& c, const Int& d, const Int& p) {
    require_witness(c, d);
    Int prod = (4 * c.m() + 1 + 16 * d) * (4 * c.m() + 1 + 32 * d);
    return prod % p != 0;
}

/// The mu_2 translation action on the fiber at p is free unless p | d.
inline bool mu2_action_free(const FamilyCurve& c, const Int& d, const Int& p) {
    require_witness(c, d);
    return d % p != 0;
}

}  // namespace semiabel
