// Theorem-level constructors and verifiers: Schubert and Atiyah polytopes,
// the C-set/moment-polytope pipeline, the intersection formula, action
// chambers, unstable manifolds, the Delzant approximating sequences, and the
// finiteness survey.  Verifiers are pure functions of (inputs, seed) and
// report bounded gaps, never bare equalities.

#ifndef MOMAP_THEOREMS_HPP
#define MOMAP_THEOREMS_HPP

#include "momap/lie.hpp"
#include "momap/polytope.hpp"
#include "momap/reps.hpp"
#include "momap/sections.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace momap::theorems {

struct CheckResult {
    std::string name;
    bool pass = false;
    double gap = 0;  // measured violation / distance
    double tol = 0;
    std::string note;
};

struct VerificationReport {
    std::string theorem_id;
    std::string inputs_digest;
    std::uint64_t seed = 0;
    long samples_requested = 0;
    long samples_used = 0;
    long samples_skipped = 0;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    void add(const std::string& name, bool pass, double gap, double tol,
             const std::string& note = "");
    bool all_pass() const;
};

std::string digest(const std::string& canonical_inputs);  // FNV-1a hex

// ---------------------------------------------------------------------------
// Schubert polytopes

poly::Polytope schubert_polytope(const lie::WeylGroup& group, const lie::WeylElement& w,
                                 const lie::Weight& mu);

// Borel-sampled verification on the flag manifold of a type-A group (n <= 4):
// (a) containment of sampled moments, (b) exact vertex attainment at the
// torus-fixed points, (c) Hausdorff gap of the sampled hull.
VerificationReport check_schubert(const lie::WeylGroup& group, const lie::WeylElement& w,
                                  const lie::Weight& mu, long samples, std::uint64_t seed);

// permutation realizing a type-A Weyl element on epsilon-coordinates
std::vector<int> weyl_permutation(const lie::WeylGroup& group, const lie::WeylElement& w);

// ---------------------------------------------------------------------------
// Atiyah polytopes

poly::Polytope atiyah_polytope(const reps::Rep& rep, const reps::ProjPoint& x);

VerificationReport check_atiyah(const reps::Rep& rep, const reps::ProjPoint& x, long samples,
                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Main pipeline (moment polytope = closure of the C-set)

struct MainVerification {
    VerificationReport report;
    sections::CSet cset;
    std::vector<poly::Polytope> hulls;  // hull of members with witness degree <= r, r = 1..r_max
    bool unipotently_unstable = false;

    const poly::Polytope& final_hull() const { return hulls.back(); }
};

MainVerification verify_main(const reps::Rep& rep, const reps::ProjPoint& x, int r_max,
                             long samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Intersection formula

struct IntersectionResult {
    VerificationReport report;
    poly::Polytope lhs;  // C-set hull
    poly::Polytope rhs;  // chamber cut of the intersected Atiyah polytopes
};

IntersectionResult intersection_gap(const reps::Rep& rep, const reps::ProjPoint& x,
                                    long n_samples, int r_max, std::uint64_t seed,
                                    double gap_tol = 0.05);

// ---------------------------------------------------------------------------
// Action chambers

struct ActionChamber {
    std::vector<int> signs;  // +1/-1 per distinct hyperplane
    RatVec witness;          // interior rational point, coroot coordinates
};

struct ChamberArrangement {
    std::vector<RatVec> hyperplanes;  // distinct primitive normals (fundamental coords)
    std::vector<ActionChamber> chambers;
};

// Full-dimensional chambers of the arrangement {xi : w(xi) = 0}; xi lives in
// coroot coordinates so that the pairing with a weight is the plain dot
// product.  Enumeration walks the wall-crossing graph with exact LP
// feasibility tests, which reaches every chamber.
ChamberArrangement action_chambers(const std::vector<lie::Weight>& weights, int rank);

// index of a chamber whose witness is strictly dominant; throws if none
std::size_t pick_positive(const lie::RootSystem& rs, const ChamberArrangement& arr);

// ---------------------------------------------------------------------------
// Unstable manifolds (Prop 5.1)

// eta in epsilon coordinates must be strictly dominant and off every
// weight-difference hyperplane of the representation.
VerificationReport unstable_check(const reps::Rep& rep, const RatVec& eta_eps, long samples,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Delzant approximating sequences

struct DelzantTerm {
    poly::Polytope delta;
    BigInt dilation;  // d_n with d_n * Delta_n a regular lattice polytope
};

struct DelzantResult {
    std::vector<DelzantTerm> terms;
    VerificationReport report;
};

// lambda in fundamental coordinates (exact; rationalize floats first); sigma
// must be the face of the dominant chamber containing lambda.
DelzantResult delzant_sequence(const lie::RootSystem& rs, const RatVec& lambda,
                               const lie::ChamberFace& sigma, int n_terms);

// ---------------------------------------------------------------------------
// Finiteness survey (Cor 2.5 / 2.6)

struct SurveyEntry {
    poly::Polytope hull;
    bool empty_flagged = false;
    long count = 0;
};

struct SurveyResult {
    std::vector<SurveyEntry> distinct;
    long points = 0;
    long distinct_at_half = 0;
    long most_frequent_count = 0;
    VerificationReport report;
};

SurveyResult finiteness_survey(const reps::Rep& rep, long n_points, int r_max,
                               std::uint64_t seed);

}  // namespace momap::theorems

#endif  // MOMAP_THEOREMS_HPP
