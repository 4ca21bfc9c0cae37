// The group law on Weierstrass curves over Q and over small prime fields:
// negation, chord-tangent addition, order computation, reduction mod p,
// and brute-force point counting.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "semiabel/arith.hpp"
#include "semiabel/weierstrass.hpp"

namespace semiabel {

struct CurvePoint {
    bool inf = true;
    Rat x, y;

    static CurvePoint infinity() { return {}; }
    static CurvePoint affine(Rat px, Rat py) { return {false, std::move(px), std::move(py)}; }

    bool operator==(const CurvePoint& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

inline bool on_curve(const WeierstrassEquation& e, const CurvePoint& p) {
    if (p.inf) return true;
    Rat lhs = p.y * p.y + e.a1 * p.x * p.y + e.a3 * p.y;
    Rat rhs = p.x * p.x * p.x + e.a2 * p.x * p.x + e.a4 * p.x + e.a6;
    return lhs == rhs;
}

inline void require_on_curve(const WeierstrassEquation& e, const CurvePoint& p) {
    if (!on_curve(e, p)) throw std::invalid_argument("point not on curve");
}

/// -(x, y) = (x, -y - a1 x - a3)
inline CurvePoint negate(const WeierstrassEquation& e, const CurvePoint& p) {
    require_on_curve(e, p);
    if (p.inf) return p;
    return CurvePoint::affine(p.x, -p.y - e.a1 * p.x - e.a3);
}

// Full chord-tangent law, a1 and a3 kept throughout: the family lives in
// the a1 = 1 stratum and its char-2 reductions need the untruncated formulas.
inline CurvePoint add(const WeierstrassEquation& e, const CurvePoint& p1, const CurvePoint& p2) {
    require_on_curve(e, p1);
    require_on_curve(e, p2);
    if (p1.inf) return p2;
    if (p2.inf) return p1;
    if (p1.x == p2.x && p2.y == -p1.y - e.a1 * p1.x - e.a3) return CurvePoint::infinity();
    Rat lambda, nu;
    if (p1.x != p2.x) {
        lambda = (p2.y - p1.y) / (p2.x - p1.x);
        nu = (p1.y * p2.x - p2.y * p1.x) / (p2.x - p1.x);
    } else {
        Rat den = 2 * p1.y + e.a1 * p1.x + e.a3;
        lambda = (3 * p1.x * p1.x + 2 * e.a2 * p1.x + e.a4 - e.a1 * p1.y) / den;
        nu = (-p1.x * p1.x * p1.x + e.a4 * p1.x + 2 * e.a6 - e.a3 * p1.y) / den;
    }
    Rat x3 = lambda * lambda + e.a1 * lambda - e.a2 - p1.x - p2.x;
    Rat y3 = -(lambda + e.a1) * x3 - nu - e.a3;
    return CurvePoint::affine(x3, y3);
}

/// Smallest k >= 1 with k*pt = O, or nullopt past the bound.  The default
/// bound 12 is the rational torsion cap; the family only ever needs 4.
inline std::optional<int> order_of(const WeierstrassEquation& e, const CurvePoint& pt,
                                   int bound = 12) {
    if (bound < 1) throw std::invalid_argument("order bound must be >= 1");
    require_on_curve(e, pt);
    CurvePoint acc = pt;
    for (int k = 1; k <= bound; ++k) {
        if (acc.inf) return k;
        acc = add(e, acc, pt);
    }
    return std::nullopt;
}

struct FiniteCurvePoint {
    bool inf = true;
    Int x, y;  // residues in [0, p)

    static FiniteCurvePoint infinity() { return {}; }
    static FiniteCurvePoint affine(Int px, Int py) {
        return {false, std::move(px), std::move(py)};
    }

    bool operator==(const FiniteCurvePoint& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

// A Weierstrass equation reduced mod p, with the same group law carried out
// in modular arithmetic.
class FiniteCurve {
  public:
    FiniteCurve(const WeierstrassEquation& e, const Int& p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
        a1_ = reduce_rat(e.a1);
        a2_ = reduce_rat(e.a2);
        a3_ = reduce_rat(e.a3);
        a4_ = reduce_rat(e.a4);
        a6_ = reduce_rat(e.a6);
    }

    const Int& p() const { return p_; }

    Int reduce_rat(const Rat& q) const {
        Int den(q.get_den());
        if (den % p_ == 0)
            throw std::domain_error("denominator divisible by p: reduction undefined");
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t()))
            throw std::domain_error("denominator not invertible mod p");
        Int num(q.get_num());
        return mod(num * inv);
    }

    bool on_curve(const FiniteCurvePoint& pt) const {
        if (pt.inf) return true;
        Int lhs = pt.y * pt.y + a1_ * pt.x * pt.y + a3_ * pt.y;
        Int rhs = pt.x * pt.x * pt.x + a2_ * pt.x * pt.x + a4_ * pt.x + a6_;
        return mod(lhs - rhs) == 0;
    }

    bool is_singular_at(const FiniteCurvePoint& pt) const {
        if (pt.inf) return false;
        // partials of y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
        Int fx = a1_ * pt.y - 3 * pt.x * pt.x - 2 * a2_ * pt.x - a4_;
        Int fy = 2 * pt.y + a1_ * pt.x + a3_;
        return on_curve(pt) && mod(fx) == 0 && mod(fy) == 0;
    }

    FiniteCurvePoint negate(const FiniteCurvePoint& pt) const {
        if (pt.inf) return pt;
        return FiniteCurvePoint::affine(pt.x, mod(-pt.y - a1_ * pt.x - a3_));
    }

    FiniteCurvePoint add(const FiniteCurvePoint& p1, const FiniteCurvePoint& p2) const {
        if (p1.inf) return p2;
        if (p2.inf) return p1;
        if (p1.x == p2.x && p2.y == mod(-p1.y - a1_ * p1.x - a3_))
            return FiniteCurvePoint::infinity();
        Int lambda, nu;
        if (p1.x != p2.x) {
            Int inv = invert(mod(p2.x - p1.x));
            lambda = mod((p2.y - p1.y) * inv);
            nu = mod((p1.y * p2.x - p2.y * p1.x) * inv);
        } else {
            Int inv = invert(mod(2 * p1.y + a1_ * p1.x + a3_));
            lambda = mod((3 * p1.x * p1.x + 2 * a2_ * p1.x + a4_ - a1_ * p1.y) * inv);
            nu = mod((-p1.x * p1.x * p1.x + a4_ * p1.x + 2 * a6_ - a3_ * p1.y) * inv);
        }
        Int x3 = mod(lambda * lambda + a1_ * lambda - a2_ - p1.x - p2.x);
        Int y3 = mod(-(lambda + a1_) * x3 - nu - a3_);
        return FiniteCurvePoint::affine(x3, y3);
    }

    std::optional<int> order_of(const FiniteCurvePoint& pt, int bound = 12) const {
        FiniteCurvePoint acc = pt;
        for (int k = 1; k <= bound; ++k) {
            if (acc.inf) return k;
            acc = add(acc, pt);
        }
        return std::nullopt;
    }

    std::vector<FiniteCurvePoint> all_points() const {
        std::vector<FiniteCurvePoint> pts{FiniteCurvePoint::infinity()};
        for (Int x = 0; x < p_; ++x)
            for (Int y = 0; y < p_; ++y) {
                FiniteCurvePoint pt = FiniteCurvePoint::affine(x, y);
                if (on_curve(pt)) pts.push_back(pt);
            }
        return pts;
    }

  private:
    Int mod(const Int& v) const {
        Int r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
        return r;
    }

    Int invert(const Int& v) const {
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t()))
            throw std::domain_error("non-invertible denominator mod p (singular point?)");
        return inv;
    }

    Int p_, a1_, a2_, a3_, a4_, a6_;
};

/// Coordinate-wise reduction; rejects non-p-integral coordinates (the mu_2
/// section with denominators 4, 8 is meant to fail at p = 2).
inline FiniteCurvePoint reduce_mod_p(const WeierstrassEquation& e, const CurvePoint& pt,
                                     const Int& p) {
    FiniteCurve fc(e, p);
    if (pt.inf) return FiniteCurvePoint::infinity();
    return FiniteCurvePoint::affine(fc.reduce_rat(pt.x), fc.reduce_rat(pt.y));
}

struct PointCount {
    long count = 0;
    bool smooth = true;
};

/// Projective point count over F_p by brute force over x, completing the
/// square for odd p.  Singular reductions still get a count, flagged.
inline PointCount count_points(const WeierstrassEquation& e, const Int& p) {
    if (p > 10000) throw std::invalid_argument("brute-force count limited to p <= 10^4");
    FiniteCurve fc(e, p);
    PointCount out;
    out.count = 1;  // point at infinity
    if (p == 2) {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                FiniteCurvePoint pt = FiniteCurvePoint::affine(x, y);
                if (fc.on_curve(pt)) {
                    ++out.count;
                    if (fc.is_singular_at(pt)) out.smooth = false;
                }
            }
        return out;
    }
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
    Int a1 = fc.reduce_rat(e.a1), a2 = fc.reduce_rat(e.a2), a3 = fc.reduce_rat(e.a3),
        a4 = fc.reduce_rat(e.a4), a6 = fc.reduce_rat(e.a6);
    for (Int x = 0; x < p; ++x) {
        Int rhs = (4 * (x * x * x + a2 * x * x + a4 * x + a6) + (a1 * x + a3) * (a1 * x + a3)) % p;
        if (rhs == 0)
            out.count += 1;
        else
            out.count += 1 + mpz_legendre(rhs.get_mpz_t(), p.get_mpz_t());
    }
    // singular points have 2y + a1 x + a3 = 0, so y is determined by x
    Int inv2;
    Int two = 2;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
    for (Int x = 0; x < p && out.smooth; ++x) {
        Int y = ((-a1 * x - a3) * inv2) % p;
        if (y < 0) y += p;
        if (fc.is_singular_at(FiniteCurvePoint::affine(x, y))) out.smooth = false;
    }
    return out;
}

enum class F2Class { E1 = 1, E2 = 2, E3 = 3, E4 = 4, E5 = 5 };

/// The five elliptic curves over F_2, told apart by |E(F_2)| in {1,...,5}.
inline F2Class classify_F2(const WeierstrassEquation& e) {
    PointCount pc = count_points(e, 2);
    if (!pc.smooth) throw std::domain_error("singular reduction at 2");
    if (pc.count < 1 || pc.count > 5) throw std::domain_error("impossible F_2 point count");
    return static_cast<F2Class>(pc.count);
}

}  // namespace semiabel
