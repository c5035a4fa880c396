#include "momap/lp.hpp"

#include <stdexcept>

namespace momap::lp {

namespace {

// Dense tableau simplex over the rationals.  Bland's rule guarantees
// termination on degenerate problems.
class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, RatVec(cols + 1)) {}

    Rat& at(std::size_t i, std::size_t j) { return t_[i][j]; }
    Rat& rhs(std::size_t i) { return t_[i][n_]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        Rat piv = t_[pr][pc];
        for (std::size_t j = 0; j <= n_; ++j) t_[pr][j] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == pr || t_[i][pc] == 0) continue;
            Rat f = t_[i][pc];
            for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[pr][j];
        }
        basis_[pr] = pc;
    }

    // maximize c.x for x >= 0 with the current basic feasible solution.
    // Returns false on unboundedness.  `active` masks usable columns.
    bool run(const RatVec& c, const std::vector<bool>& active) {
        // reduced costs: z_j - c_j = c_B B^-1 A_j - c_j
        while (true) {
            RatVec red(n_, Rat(0));
            for (std::size_t j = 0; j < n_; ++j) {
                if (!active[j]) continue;
                Rat z = 0;
                for (std::size_t i = 0; i < m_; ++i) z += c[basis_[i]] * t_[i][j];
                red[j] = z - c[j];
            }
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j) {  // Bland: smallest improving index
                if (active[j] && red[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return true;  // optimal
            std::size_t leave = m_;
            Rat best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rat ratio = t_[i][n_] / t_[i][enter];
                if (leave == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) return false;  // unbounded
            pivot(leave, enter);
        }
    }

  private:
    std::size_t m_, n_;
    std::vector<RatVec> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

Result maximize(const Problem& p, const RatVec& c) {
    if (c.size() != p.nvars) throw std::invalid_argument("lp: objective size mismatch");
    std::size_t m = p.ineq_lhs.size() + p.eq_lhs.size();
    std::size_t nx = p.nonneg ? p.nvars : 2 * p.nvars;  // free vars split as u - v
    std::size_t nslack = p.ineq_lhs.size();
    std::size_t nart = m;
    std::size_t n = nx + nslack + nart;

    Tableau tab(m, n);
    auto var_coeff = [&](const RatVec& row, std::size_t j) -> Rat {
        if (p.nonneg) return row[j];
        return j < p.nvars ? row[j] : -row[j - p.nvars];
    };

    std::size_t r = 0;
    for (std::size_t k = 0; k < p.ineq_lhs.size(); ++k, ++r) {
        bool neg = p.ineq_rhs[k] < 0;
        for (std::size_t j = 0; j < nx; ++j) {
            Rat v = var_coeff(p.ineq_lhs[k], j);
            tab.at(r, j) = neg ? -v : v;
        }
        tab.at(r, nx + k) = neg ? Rat(-1) : Rat(1);
        tab.rhs(r) = neg ? -p.ineq_rhs[k] : p.ineq_rhs[k];
    }
    for (std::size_t k = 0; k < p.eq_lhs.size(); ++k, ++r) {
        bool neg = p.eq_rhs[k] < 0;
        for (std::size_t j = 0; j < nx; ++j) {
            Rat v = var_coeff(p.eq_lhs[k], j);
            tab.at(r, j) = neg ? -v : v;
        }
        tab.rhs(r) = neg ? -p.eq_rhs[k] : p.eq_rhs[k];
    }
    for (std::size_t i = 0; i < m; ++i) {
        tab.at(i, nx + nslack + i) = 1;
        tab.basis().push_back(nx + nslack + i);
    }

    // Phase 1: drive artificials to zero.
    {
        RatVec obj(n, Rat(0));
        for (std::size_t j = nx + nslack; j < n; ++j) obj[j] = -1;
        std::vector<bool> active(n, true);
        if (!tab.run(obj, active)) throw std::logic_error("lp: phase-1 unbounded");
        Rat art_sum = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] >= nx + nslack) art_sum += tab.rhs(i);
        }
        if (art_sum != 0) return {Status::Infeasible, Rat(0), {}};
        // pivot basic artificials out where possible
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] < nx + nslack) continue;
            std::size_t j = 0;
            for (; j < nx + nslack; ++j) {
                if (tab.at(i, j) != 0) break;
            }
            if (j < nx + nslack) tab.pivot(i, j);
            // otherwise the row is redundant; its artificial stays basic at 0
        }
    }

    // Phase 2.
    RatVec obj(n, Rat(0));
    for (std::size_t j = 0; j < p.nvars; ++j) {
        obj[j] = c[j];
        if (!p.nonneg) obj[p.nvars + j] = -c[j];
    }
    std::vector<bool> active(n, true);
    for (std::size_t j = nx + nslack; j < n; ++j) active[j] = false;
    if (!tab.run(obj, active)) return {Status::Unbounded, Rat(0), {}};

    RatVec full(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i) full[tab.basis()[i]] = tab.rhs(i);
    Result res;
    res.status = Status::Optimal;
    res.point.resize(p.nvars);
    res.value = 0;
    for (std::size_t j = 0; j < p.nvars; ++j) {
        res.point[j] = p.nonneg ? full[j] : full[j] - full[p.nvars + j];
        res.value += c[j] * res.point[j];
    }
    return res;
}

std::optional<RatVec> feasible_point(const Problem& p) {
    Result r = maximize(p, RatVec(p.nvars, Rat(0)));
    if (r.status == Status::Optimal) return r.point;
    return std::nullopt;
}

}  // namespace momap::lp
