// Exact integer and rational arithmetic primitives on top of GMP:
// gcd, p-adic valuation, Legendre symbol, deterministic primality,
// and complete factorization (trial division + Pollard rho).
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semiabel {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

namespace detail {

inline bool miller_rabin_witness_u64(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return false;
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    auto mulmod = [n](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % n);
    };
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
        if (e & 1) x = mulmod(x, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x);
        if (x == n - 1) return false;
    }
    return true;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // deterministic for all 64-bit inputs
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
        if (miller_rabin_witness_u64(n, a)) return false;
    return true;
}

inline bool miller_rabin_witness(const Int& n, const Int& a) {
    if (a % n == 0) return false;
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the fixed base set is exact below 3.3e24,
/// far beyond every discriminant this library factors.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p() && sizeof(unsigned long) == 8)
        return detail::is_prime_u64(n.get_ui());
    static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (int b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    for (int b : bases)
        if (detail::miller_rabin_witness(n, Int(b))) return false;
    return true;
}

/// Largest e with p^e | x.  Rejects x = 0 and composite p: the curves in
/// scope always have Delta != 0, so the infinite valuation never arises.
inline unsigned long valuation(const Int& p, const Int& x) {
    if (x == 0) throw std::invalid_argument("valuation of 0 is undefined");
    if (!is_prime(p)) throw std::invalid_argument("valuation requires a prime modulus");
    Int rest;
    return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

/// Legendre symbol (a/p) in {-1, 0, +1} for an odd prime p.
inline int legendre(const Int& a, const Int& p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre requires an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

struct Factorization {
    int sign = 1;  // +1 or -1
    std::vector<std::pair<Int, unsigned long>> factors;  // primes strictly increasing

    Int value() const {
        Int v = sign;
        for (const auto& [p, e] : factors)
            for (unsigned long i = 0; i < e; ++i) v *= p;
        return v;
    }
};

namespace detail {

constexpr std::uint64_t kTrialBound = 1000000;

inline std::uint64_t pollard_brent_u64(std::uint64_t n) {
    // n odd composite, no factor below the trial bound
    auto mulmod = [n](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % n);
    };
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t q = 1;
        int steps = 0;
        while (d == 1) {
            x = (mulmod(x, x) + c) % n;
            y = (mulmod(y, y) + c) % n;
            y = (mulmod(y, y) + c) % n;
            std::uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) { d = n; break; }
            q = mulmod(q, diff);
            if (++steps % 64 == 0) {
                d = std::__gcd(q, n);
                if (d != 1) break;
            }
        }
        if (d != n && d != 1) return d;
        if (d == n) {
            d = std::__gcd(q, n);
            if (d != 1 && d != n) return d;
        }
    }
}

inline void factor_u64_into(std::uint64_t n, std::vector<std::pair<Int, unsigned long>>& out) {
    for (std::uint64_t p = 2; p <= kTrialBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned long e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(Int(static_cast<unsigned long>(p)), e);
        }
    }
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.emplace_back(Int(static_cast<unsigned long>(n)), 1ul);
        return;
    }
    std::uint64_t d = pollard_brent_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

inline Int pollard_rho_mpz(const Int& n) {
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

inline void factor_mpz_into(Int n, std::vector<std::pair<Int, unsigned long>>& out) {
    for (std::uint64_t p = 2; p <= kTrialBound; p += (p == 2 ? 1 : 2)) {
        Int pp(static_cast<unsigned long>(p));
        if (pp * pp > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) { n /= pp; ++e; }
            out.emplace_back(pp, e);
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1ul);
        return;
    }
    Int d = pollard_rho_mpz(n);
    factor_mpz_into(d, out);
    factor_mpz_into(n / d, out);
}

}  // namespace detail

/// Complete prime factorization of x != 0, primes in increasing order.
inline Factorization factor(const Int& x) {
    if (x == 0) throw std::invalid_argument("cannot factor 0");
    Factorization f;
    f.sign = sgn(x) < 0 ? -1 : 1;
    Int n = abs(x);
    if (n == 1) return f;
    if (n.fits_ulong_p() && sizeof(unsigned long) == 8)
        detail::factor_u64_into(n.get_ui(), f.factors);
    else
        detail::factor_mpz_into(n, f.factors);
    // Pollard recursion can emit repeated or unordered primes; normalize.
    std::sort(f.factors.begin(), f.factors.end());
    std::vector<std::pair<Int, unsigned long>> merged;
    for (auto& pe : f.factors) {
        if (!merged.empty() && merged.back().first == pe.first)
            merged.back().second += pe.second;
        else
            merged.push_back(pe);
    }
    f.factors = std::move(merged);
    return f;
}

/// All positive divisors of |x|, unsorted order not guaranteed.
inline std::vector<Int> positive_divisors(const Int& x) {
    Factorization f = factor(x);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f.factors) {
        std::size_t old = divs.size();
        Int pk = 1;
        for (unsigned long i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

}  // namespace semiabel
