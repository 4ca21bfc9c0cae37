// Weierstrass equations, their standard invariants, coordinate changes,
// and the two-parameter integral family y^2 + xy = x^3 + m x^2 + n x.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "semiabel/arith.hpp"

namespace semiabel {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassEquation {
    Rat a1, a2, a3, a4, a6;

    bool operator==(const WeierstrassEquation&) const = default;

    bool is_integral() const {
        for (const Rat* a : {&a1, &a2, &a3, &a4, &a6})
            if (a->get_den() != 1) return false;
        return true;
    }
};

struct InvariantSet {
    Rat b2, b4, b6, b8, c4, c6, disc;

    /// j = c4^3 / Delta; undefined on singular cubics.
    Rat j() const {
        if (disc == 0) throw std::domain_error("j-invariant undefined: discriminant is zero");
        return Rat(c4 * c4 * c4 / disc);
    }
};

inline InvariantSet invariants(const WeierstrassEquation& e) {
    InvariantSet s;
    s.b2 = e.a1 * e.a1 + 4 * e.a2;
    s.b4 = 2 * e.a4 + e.a1 * e.a3;
    s.b6 = e.a3 * e.a3 + 4 * e.a6;
    s.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 -
           e.a4 * e.a4;
    s.c4 = s.b2 * s.b2 - 24 * s.b4;
    s.c6 = -s.b2 * s.b2 * s.b2 + 36 * s.b2 * s.b4 - 216 * s.b6;
    s.disc = -s.b2 * s.b2 * s.b8 - 8 * s.b4 * s.b4 * s.b4 - 27 * s.b6 * s.b6 +
             9 * s.b2 * s.b4 * s.b6;
    return s;
}

// x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t
struct CoordinateChange {
    Rat u = 1, r = 0, s = 0, t = 0;

    static CoordinateChange identity() { return {}; }

    CoordinateChange inverse() const {
        if (u == 0) throw std::invalid_argument("coordinate change with u = 0");
        CoordinateChange inv;
        inv.u = 1 / u;
        inv.r = -r / (u * u);
        inv.s = -s / u;
        inv.t = (r * s - t) / (u * u * u);
        return inv;
    }

    /// Applying *this, then next, as a single change.
    CoordinateChange then(const CoordinateChange& next) const {
        CoordinateChange c;
        c.u = u * next.u;
        c.r = u * u * next.r + r;
        c.s = u * next.s + s;
        c.t = u * u * u * next.t + s * u * u * next.r + t;
        return c;
    }
};

inline WeierstrassEquation apply_change(const WeierstrassEquation& e, const CoordinateChange& c) {
    if (c.u == 0) throw std::invalid_argument("coordinate change with u = 0");
    const Rat &u = c.u, &r = c.r, &s = c.s, &t = c.t;
    Rat u2 = u * u, u3 = u2 * u;
    WeierstrassEquation out;
    out.a1 = (e.a1 + 2 * s) / u;
    out.a2 = (e.a2 - s * e.a1 + 3 * r - s * s) / u2;
    out.a3 = (e.a3 + r * e.a1 + 2 * t) / u3;
    out.a4 = (e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t) /
             (u2 * u2);
    out.a6 = (e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1) /
             (u3 * u3);
    return out;
}

/// Reason the pair (m, n) fails the family invariants, or nullopt if valid.
inline std::optional<std::string> family_reject_reason(const Int& m, const Int& n) {
    if (n % 2 == 0) return "n even";
    Int g = gcd(4 * m + 1, n);
    if (g != 1) return "gcd(4m+1, n) = " + g.get_str() + " > 1";
    if ((4 * m + 1) * (4 * m + 1) == 64 * n) return "discriminant zero";
    return std::nullopt;
}

// The family curve y^2 + xy = x^3 + m x^2 + n x with n odd, gcd(4m+1, n) = 1.
// Invariants are cached at construction: everything downstream consumes Delta.
class FamilyCurve {
  public:
    static FamilyCurve make(const Int& m, const Int& n) {
        if (auto why = family_reject_reason(m, n))
            throw std::invalid_argument("invalid family pair (" + m.get_str() + ", " +
                                        n.get_str() + "): " + *why);
        return FamilyCurve(m, n);
    }

    const Int& m() const { return m_; }
    const Int& n() const { return n_; }

    /// (4m+1)^2 - 64n, the non-n^2 part of the discriminant.
    const Int& core() const { return core_; }
    const Int& disc() const { return disc_; }
    const Int& c4() const { return c4_; }

    WeierstrassEquation equation() const {
        return {Rat(1), Rat(m_), Rat(0), Rat(n_), Rat(0)};
    }

    InvariantSet invariant_set() const { return invariants(equation()); }

    Rat j() const { return invariant_set().j(); }

    bool operator==(const FamilyCurve& o) const { return m_ == o.m_ && n_ == o.n_; }

  private:
    FamilyCurve(Int m, Int n) : m_(std::move(m)), n_(std::move(n)) {
        Int q = 4 * m_ + 1;
        core_ = q * q - 64 * n_;
        disc_ = n_ * n_ * core_;
        c4_ = q * q - 48 * n_;
    }

    Int m_, n_;
    Int core_, disc_, c4_;
};

enum class MinimalityVerdict { minimal_multiplicative, undetermined };

/// gcd(c4, Delta) = 1 forces a globally minimal equation whose every fiber
/// is I_v with v = val_p(Delta).  Anything else is out of scope and reported
/// as undetermined rather than running the full Tate algorithm.
inline MinimalityVerdict is_globally_minimal_Iv(const WeierstrassEquation& e) {
    if (!e.is_integral())
        throw std::invalid_argument("minimality test requires integral coefficients");
    InvariantSet s = invariants(e);
    Int c4(s.c4.get_num()), disc(s.disc.get_num());
    if (disc != 0 && gcd(c4, disc) == 1) return MinimalityVerdict::minimal_multiplicative;
    return MinimalityVerdict::undetermined;
}

}  // namespace semiabel
