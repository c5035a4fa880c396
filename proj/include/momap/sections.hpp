// Graded spaces of polynomial sections on the projectivized representation,
// N- and G-invariant sections via raising-operator kernels, C-sets,
// Fubini-Study norms, the Borel norm-derivative identity, and semistability.
//
// Sections live in the dual monomial coordinates z*_k (the functional that
// extracts the k-th monomial coefficient); z*_k carries the moment weight
// mu_k, so the torus weight of a product is the sum of its factors' moment
// weights and every statement about dominant weights reads off directly.

#ifndef MOMAP_SECTIONS_HPP
#define MOMAP_SECTIONS_HPP

#include "momap/lie.hpp"
#include "momap/reps.hpp"

#include <optional>
#include <string>
#include <vector>

namespace momap::sections {

struct PolySpace {
    int degree = 0;
    std::vector<std::vector<int>> monos;  // exponents over the rep basis, |beta| = degree
    std::vector<lie::Weight> weights;     // sum of moment weights of the factors

    int dim() const { return static_cast<int>(monos.size()); }
    int index(const std::vector<int>& expo) const;
};

PolySpace poly_space(const reps::Rep& rep, int r);

struct Section {
    int degree = 0;
    lie::Weight weight;  // total torus weight nu
    RatVec coeffs;       // over poly_space(rep, degree).monos

    bool is_zero() const;
};

// Exact kernel of all simple raising operators on the weight-nu part of
// degree-r sections.  Empty when nu does not occur.
std::vector<Section> n_invariant_sections(const reps::Rep& rep, int r, const lie::Weight& nu);

// Kernel of all simple raising and lowering operators (weight-0 block).
std::vector<Section> g_invariant_sections(const reps::Rep& rep, int r);

GaussRat evaluate(const Section& s, const PolySpace& space, const reps::ProjPoint& x);
reps::Cplx evaluate_f(const Section& s, const PolySpace& space, const reps::CVec& coeffs);

// |s(z)| / |z|^r in the invariant metric; scale-invariant in z.
double fs_norm(const reps::Rep& rep, const Section& s, const reps::ProjPoint& z);

// ---------------------------------------------------------------------------
// C-sets

struct CSetMember {
    lie::Weight lambda;  // nu / r, dominant rational weight
    int witness_degree = 0;
    Section witness;
    GaussRat value;  // witness value at the base point (nonzero)
};

struct CSet {
    std::vector<CSetMember> members;  // sorted by lambda
    int r_max = 0;
};

// Rational weights nu/r (r <= r_max) carrying an N-invariant section of
// weight nu and degree r that does not vanish at x.  Exact throughout;
// nonvanishing at x alone suffices because an N-invariant weight section
// scales by a character along the B-orbit.
CSet c_set(const reps::Rep& rep, const reps::ProjPoint& x, int r_max);

// ---------------------------------------------------------------------------
// Borel directions and the norm-derivative identity

struct BorelDir {
    std::vector<double> phase;        // theta: compact torus direction i*diag(theta)
    std::vector<double> boost;        // u: noncompact direction diag(u)
    Eigen::MatrixXcd nilpotent;       // strictly upper triangular part

    static BorelDir zero(int n);
    Eigen::MatrixXcd matrix() const;  // i diag(theta) + diag(u) + nilpotent
};

// Projection b -> g (imaginary part w.r.t. the compact real form):
// tau(theta) |-> 0, diag(u) |-> -i diag(u), zeta |-> (zeta + zeta*)/2i.
Eigen::MatrixXcd pr_map(const BorelDir& xi);

// Frozen proportionality constant of the norm-derivative identity in this
// normalization, measured once against the closed form on P^1 (Sym^1, n=2,
// s the coordinate section): d/dt log|s|^2 = scale * r * (-lambda(pr xi) + phi(pr xi)).
inline constexpr double kNormDerivativeScale = -2.0;

struct NormDerivative {
    double analytic = 0;
    double finite_diff = 0;
};

// Both sides are d/dt log |s|^2 along the flow of xi_M at z; throws if s(z)=0.
NormDerivative norm_log_derivative(const reps::Rep& rep, const Section& s,
                                   const reps::ProjPoint& z, const BorelDir& xi,
                                   double step = 1e-4);

// ---------------------------------------------------------------------------
// Norm maximization over a Borel orbit (multi-start ascent along the
// analytic derivative)

struct MaxNormResult {
    reps::ProjPoint argmax;
    std::vector<double> moment;  // torus moment at the argmax, fundamental coords
    double off_chamber = 0;
    double norm = 0;
    bool converged = false;
    int iterations = 0;
};

MaxNormResult max_norm_on_borel_orbit(const reps::Rep& rep, const Section& s,
                                      const reps::ProjPoint& x, int budget, RngStream& rng);

// ---------------------------------------------------------------------------
// Semistability

enum class SemistableMode { TorusExact, Unipotent, Reductive };

struct SemistableResult {
    bool semistable = false;
    bool truncated = false;  // a negative verdict only means "not found up to r_max"
    int r_max = 0;
    std::string certificate;
    std::optional<Section> witness;
    std::optional<int> witness_degree;
};

SemistableResult semistable(const reps::Rep& rep, const reps::ProjPoint& x, SemistableMode mode,
                            int r_max = 0);

}  // namespace momap::sections

#endif  // MOMAP_SECTIONS_HPP
