// Exhaustive enumeration over (m, n) boxes and the classification searches:
// curves with a narrow two-division point and a witness d, and curves with a
// narrow point of order four, each verified by exhaustion.
#pragma once

#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "semiabel/arith.hpp"
#include "semiabel/points.hpp"
#include "semiabel/reduction.hpp"
#include "semiabel/torsion.hpp"
#include "semiabel/weierstrass.hpp"

namespace semiabel {

struct SearchBox {
    long m_min, m_max, n_min, n_max;

    SearchBox(long mmin, long mmax, long nmin, long nmax)
        : m_min(mmin), m_max(mmax), n_min(nmin), n_max(nmax) {
        if (m_min > m_max || n_min > n_max) throw std::invalid_argument("empty search box");
    }

    static SearchBox symmetric(long half) { return SearchBox(-half, half, -half, half); }
};

struct CurveDossier {
    FamilyCurve curve;
    InvariantSet invariants;
    std::vector<FiberReport> fibers;  // one per prime dividing Delta
    TorsionProfile torsion;
    bool narrow_P = false;
    F2Class f2_class = F2Class::E2;
};

inline CurveDossier make_dossier(const FamilyCurve& c) {
    CurveDossier d{c, c.invariant_set(), {}, torsion_profile(c), is_narrow_P(c),
                   classify_F2(c.equation())};
    for (const auto& [p, e] : factor(c.disc()).factors) d.fibers.push_back(fiber_report(c, p));
    return d;
}

/// Stream every valid pair in the box in lexicographic (m, n) order.
inline void enumerate(const SearchBox& box, const std::function<void(const FamilyCurve&)>& emit) {
    for (long m = box.m_min; m <= box.m_max; ++m)
        for (long n = box.n_min; n <= box.n_max; ++n) {
            Int mi(m), ni(n);
            if (!family_reject_reason(mi, ni)) emit(FamilyCurve::make(mi, ni));
        }
}

/// Parallel variant; emission order stays lexicographic because chunks are
/// joined in m-order.
inline void enumerate(const SearchBox& box, unsigned jobs,
                      const std::function<void(const FamilyCurve&)>& emit) {
    if (jobs <= 1) {
        enumerate(box, emit);
        return;
    }
    long span = box.m_max - box.m_min + 1;
    long chunk = (span + jobs - 1) / jobs;
    std::vector<std::vector<FamilyCurve>> results(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        long lo = box.m_min + w * chunk;
        long hi = std::min(box.m_max, lo + chunk - 1);
        if (lo > box.m_max) break;
        workers.emplace_back([&results, w, lo, hi, &box] {
            for (long m = lo; m <= hi; ++m)
                for (long n = box.n_min; n <= box.n_max; ++n) {
                    Int mi(m), ni(n);
                    if (!family_reject_reason(mi, ni))
                        results[w].push_back(FamilyCurve::make(mi, ni));
                }
        });
    }
    for (auto& t : workers) t.join();
    for (const auto& part : results)
        for (const auto& c : part) emit(c);
}

inline std::vector<FamilyCurve> enumerate_collect(const SearchBox& box) {
    std::vector<FamilyCurve> out;
    enumerate(box, [&](const FamilyCurve& c) { out.push_back(c); });
    return out;
}

/// Curves with a narrow P (n = +-1) and a second two-division witness d.
inline std::vector<FamilyCurve> theorem_order_two(const SearchBox& box) {
    std::vector<FamilyCurve> out;
    enumerate(box, [&](const FamilyCurve& c) {
        if (is_narrow_P(c) && find_d(c)) out.push_back(c);
    });
    return out;
}

/// Same set derived by forcing instead of search: n = +-1 and d | n give
/// d = -+1 and 4m + 16d = 0.
inline std::vector<FamilyCurve> order_two_forced() {
    std::vector<FamilyCurve> out;
    for (int d : {1, -1})
        for (int n : {1, -1}) {
            // n = -d(4m+1+16d) with d = +-1 forces 4m+17d = -n*d ... solve directly
            // 16d^2 + (4m+1)d + n = 0  =>  m = -(16d^2 + d + n) / (4d)
            Int num = -(Int(16) * d * d + d + n);
            if (num % (4 * d) != 0) continue;
            Int m = num / (4 * d);
            if (!family_reject_reason(m, Int(n))) out.push_back(FamilyCurve::make(m, Int(n)));
        }
    return out;
}

/// Whether an integral section is narrow: trivial component class at every
/// bad prime.
inline bool is_narrow_point(const FamilyCurve& c, const CurvePoint& pt) {
    for (const auto& [p, e] : factor(c.disc()).factors)
        if (!point_component_trivial(c, pt, p)) return false;
    return true;
}

/// Curves with a narrow rational point of order four whose reduction mod 2
/// still has order four.
inline std::vector<FamilyCurve> theorem_order_four(const SearchBox& box) {
    std::vector<FamilyCurve> out;
    enumerate(box, [&](const FamilyCurve& c) {
        auto R = find_order_four(c);
        if (!R) return;
        if (!is_narrow_point(c, *R)) return;
        WeierstrassEquation eq = c.equation();
        FiniteCurve f2(eq, Int(2));
        FiniteCurvePoint R2;
        try {
            R2 = reduce_mod_p(eq, *R, Int(2));
        } catch (const std::domain_error&) {
            return;
        }
        if (f2.order_of(R2) != 4) return;
        out.push_back(c);
    });
    return out;
}

struct QuotientClosureReport {
    long curves_with_d = 0;
    long targets_valid = 0;
    std::vector<std::pair<FamilyCurve, FamilyCurve>> pairs;  // source -> target
};

/// Re-validate and re-dossier the quotient of every curve in the box that
/// carries a witness d.
inline QuotientClosureReport quotient_closure_check(const SearchBox& box) {
    QuotientClosureReport rep;
    enumerate(box, [&](const FamilyCurve& c) {
        auto d = find_d(c);
        if (!d) return;
        ++rep.curves_with_d;
        QuotientResult q = velu_quotient(c, *d);
        if (!family_reject_reason(q.target.m(), q.target.n())) ++rep.targets_valid;
        rep.pairs.emplace_back(c, q.target);
    });
    return rep;
}

}  // namespace semiabel
