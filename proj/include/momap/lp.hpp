// Exact rational linear programming (two-phase primal simplex, Bland's rule).
// Problem sizes in this project are tiny, so a dense tableau is fine; the
// point of rolling our own is exactness.

#ifndef MOMAP_LP_HPP
#define MOMAP_LP_HPP

#include "momap/rational.hpp"

#include <optional>
#include <vector>

namespace momap::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rat value;     // objective at optimum (when Optimal)
    RatVec point;  // an optimal point (when Optimal)
};

struct Problem {
    std::size_t nvars = 0;
    std::vector<RatVec> ineq_lhs;  // rows a with a.x <= rhs
    RatVec ineq_rhs;
    std::vector<RatVec> eq_lhs;  // rows a with a.x == rhs
    RatVec eq_rhs;
    bool nonneg = false;  // constrain x >= 0 instead of x free

    void add_le(RatVec a, Rat b) {
        ineq_lhs.push_back(std::move(a));
        ineq_rhs.push_back(std::move(b));
    }
    void add_ge(RatVec a, Rat b) {
        for (Rat& x : a) x = -x;
        add_le(std::move(a), -b);
    }
    void add_eq(RatVec a, Rat b) {
        eq_lhs.push_back(std::move(a));
        eq_rhs.push_back(std::move(b));
    }
};

// maximize c.x subject to the problem constraints
Result maximize(const Problem& p, const RatVec& c);

inline Result minimize(const Problem& p, RatVec c) {
    for (Rat& x : c) x = -x;
    Result r = maximize(p, c);
    if (r.status == Status::Optimal) r.value = -r.value;
    return r;
}

std::optional<RatVec> feasible_point(const Problem& p);

}  // namespace momap::lp

#endif  // MOMAP_LP_HPP
