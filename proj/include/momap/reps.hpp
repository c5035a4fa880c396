// Explicit projective representations: the d-th symmetric power of the
// standard module of a rank-(n-1) special unitary group, realized as
// degree-d monomials with the derivations x_i d/dx_j as raising and lowering
// operators.
//
// Conventions fixed here once:
//   * A point is stored by its monomial-basis coefficients.  Supports,
//     evaluation and one-parameter limits use these exactly.
//   * Metric quantities (norms, moment maps) use the unitary-invariant inner
//     product, under which the scaled monomials sqrt(multinomial) * x^a are
//     orthonormal.  Coefficients convert by c_k / sqrt(m_k).
//   * The moment weight of basis vector k is minus its representation weight,
//     so torus_moment([e_k]) = mu_k exactly.
//   * Torus Lie-algebra directions are real traceless n-vectors v, standing
//     for the anti-Hermitian matrix i*diag(v); boosts are diag(u).

#ifndef MOMAP_REPS_HPP
#define MOMAP_REPS_HPP

#include "momap/lie.hpp"
#include "momap/linalg.hpp"
#include "momap/rational.hpp"
#include "momap/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace momap::reps {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

// Sparse integer operator on the monomial basis (entries of x_i d/dx_j).
struct SparseOp {
    int dim = 0;
    std::vector<std::tuple<int, int, long long>> entries;  // (row, col, value)

    template <class S>
    std::vector<S> apply(const std::vector<S>& v) const {
        std::vector<S> out(dim, S(0));
        for (const auto& [r, c, val] : entries) {
            if (val == 1) {
                out[r] += v[c];
            } else if constexpr (std::is_same_v<S, GaussRat>) {
                out[r] += GaussRat(Rat(val)) * v[c];
            } else {
                out[r] += static_cast<double>(val) * v[c];
            }
        }
        return out;
    }
};

struct Rep {
    int n = 0;  // special unitary group of n x n matrices
    int d = 0;  // symmetric power
    std::vector<std::vector<int>> basis;    // exponent vectors, |a| = d, lex-descending
    std::vector<lie::Weight> rep_weights;   // fundamental coordinates
    std::vector<lie::Weight> moment_weights;  // = -rep_weights
    std::vector<BigInt> multinomial;        // m_k = d! / prod a_i!
    std::vector<SparseOp> raising;          // x_i d/dx_{i+1} per simple root
    std::vector<SparseOp> lowering;         // x_{i+1} d/dx_i per simple root
    std::vector<std::pair<int, int>> root_pairs;  // positive roots of A_{n-1} as (i, j), i<j
    lie::RootSystem rs;                     // A_{n-1}

    int dim() const { return static_cast<int>(basis.size()); }
    int rank() const { return n - 1; }
    int basis_index(const std::vector<int>& expo) const;  // -1 if absent
};

// Throws on n < 2, d < 1 or a basis larger than 10^4.
Rep sym_power_rep(int n, int d);

// The derivation x_i d/dx_j on the monomial basis.
SparseOp derivation_op(const Rep& rep, int i, int j);

// ---------------------------------------------------------------------------
// Points

struct ProjPoint {
    bool exact = false;
    GaussVec ex;  // monomial coefficients (when exact)
    CVec fl;      // monomial coefficients (always usable)
    std::vector<int> support;

    static ProjPoint from_exact(GaussVec coords);
    static ProjPoint from_float(CVec coords);
    std::size_t dim() const { return fl.size(); }
};

// Relative support threshold for float points.
inline constexpr double kSupportRelTol = 1e-12;

// Weighted (invariant) norm of a coefficient vector.
double invariant_norm(const Rep& rep, const CVec& coeffs);

// unitary coordinates c_k / sqrt(m_k)
CVec unitary_coords(const Rep& rep, const CVec& coeffs);

// ---------------------------------------------------------------------------
// Group elements and actions

struct GroupSample {
    std::vector<double> log_modulus;  // u: |t_k| = exp(u_k), traceless
    std::vector<double> phase;        // theta, traceless
    CVec nilpotent;                   // coefficient per root_pairs entry
};

GroupSample sample_torus(const Rep& rep, RngStream& rng, double scale);
GroupSample sample_unipotent(const Rep& rep, RngStream& rng, double scale);
GroupSample sample_borel(const Rep& rep, RngStream& rng, double scale);

Eigen::MatrixXcd group_matrix(const Rep& rep, const GroupSample& g);

// g . z for a float group sample (unipotent series, then torus scaling)
ProjPoint act(const Rep& rep, const GroupSample& g, const ProjPoint& z);
// action of an explicit invertible n x n matrix, lifted to Sym^d
ProjPoint act(const Rep& rep, const Eigen::MatrixXcd& g, const ProjPoint& z);

// exact actions
GaussVec apply_diag_exact(const Rep& rep, const GaussVec& diag, const GaussVec& z);
// exp of the derivation sum_{i<j} zeta(i,j) x_i d/dx_j (zeta strictly upper)
GaussVec apply_unipotent_exact(const Rep& rep, const GaussMat& zeta, const GaussVec& z);

GaussMat sample_exact_unipotent(const Rep& rep, RngStream& rng, long long range, long long den);
// positive rational diagonal entries (ratios in [1/range, range])
GaussVec sample_exact_torus_diag(const Rep& rep, RngStream& rng, long long range);
ProjPoint sample_exact_point(const Rep& rep, RngStream& rng, long long range);

// lift of an n x n matrix to the monomial basis of Sym^d (substitution action)
Eigen::MatrixXcd lift_matrix(const Rep& rep, const Eigen::MatrixXcd& g);

// ---------------------------------------------------------------------------
// Moment maps

// sum_k w_k mu_k / sum_k w_k with w_k = |c_k|^2 / m_k; fundamental coordinates.
std::vector<double> torus_moment(const Rep& rep, const ProjPoint& z);
lie::Weight torus_moment_exact(const Rep& rep, const ProjPoint& z);  // requires exact z

// Hermitian traceless moment matrix; its diagonal is the torus moment in
// epsilon-coordinates.
Eigen::MatrixXcd full_moment(const Rep& rep, const ProjPoint& z);
double off_chamber_norm(const Rep& rep, const ProjPoint& z);

// epsilon-coordinate conversions for type A weights
RatVec eps_from_fund(int n, const lie::Weight& w);          // length n, trace 0
lie::Weight fund_from_eps(int n, const RatVec& eps);        // differences
std::vector<double> fund_from_eps_f(int n, const std::vector<double>& eps);

// ---------------------------------------------------------------------------
// Flag manifold

struct FlagPoint {
    Eigen::MatrixXcd g;  // determinant normalized to 1

    static FlagPoint from_matrix(Eigen::MatrixXcd m);  // throws on singular input
};

// moment map of the coadjoint orbit through diag(mu): diag(q diag(mu) q*)
// where q is the unitary Gram-Schmidt representative of h.  Returns
// epsilon-coordinates (length n).
std::vector<double> flag_moment(const std::vector<double>& mu_eps, const FlagPoint& h);
std::vector<double> flag_moment(int n, const lie::Weight& mu, const FlagPoint& h);

// ---------------------------------------------------------------------------
// Limits and Bruhat cells

struct LimitResult {
    int weight_index = -1;        // index of the fixed-component weight in rep.moment_weights
    lie::Weight component_weight;  // its moment weight
    ProjPoint limit;
};

// lim_{t -> -infinity} exp(t diag(eta)) z for exact z; eta in epsilon
// coordinates must separate the support weights (throws otherwise).
LimitResult limit_fixed_point(const Rep& rep, const RatVec& eta_eps, const ProjPoint& z);

struct BruhatCell {
    std::vector<int> perm;  // w(j) = row of the pivot in column j
    bool ambiguous = false;  // float path only: rank decision near the threshold
};

BruhatCell bruhat_cell(const GaussMat& h);         // exact ranks
BruhatCell bruhat_cell(const Eigen::MatrixXcd& h, double threshold = 1e-9);

// reduced word of the permutation as a product of adjacent transpositions
std::vector<int> permutation_word(std::vector<int> perm);

}  // namespace momap::reps

#endif  // MOMAP_REPS_HPP
