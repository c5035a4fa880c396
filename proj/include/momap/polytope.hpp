// Exact rational convex polytopes with vertex and halfspace descriptions.
//
// Every polytope is held in a canonical form derived from its vertex set:
// vertices are irredundant and sorted lexicographically, the halfspace
// description consists of the affine-hull equalities plus one primitive
// integer inequality per facet.  Lower-dimensional polytopes keep their
// equality constraints explicitly instead of being projected.  The empty
// polytope is a first-class value.

#ifndef MOMAP_POLYTOPE_HPP
#define MOMAP_POLYTOPE_HPP

#include "momap/linalg.hpp"
#include "momap/rational.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace momap::poly {

struct HalfSpace {
    RatVec normal;  // <normal, x> <= offset
    Rat offset;
};

struct HRep {
    std::vector<HalfSpace> ineqs;
    std::vector<HalfSpace> eqs;  // affine-hull equalities, <normal, x> = offset
};

class Polytope {
  public:
    Polytope() = default;

    static Polytope empty(int ambient_dim);
    // Convex hull of a point set (may be empty).
    static Polytope from_points(int ambient_dim, std::vector<RatVec> points);
    // From inequalities/equalities; throws std::domain_error on unbounded input.
    static Polytope from_hrep(int ambient_dim, const std::vector<HalfSpace>& ineqs,
                              const std::vector<HalfSpace>& eqs = {});

    int ambient_dim() const;
    bool is_empty() const;
    int dim() const;  // affine dimension; -1 for the empty polytope

    const std::vector<RatVec>& vertices() const;
    const HRep& hrep() const;  // computed on first use, cached

    friend bool operator==(const Polytope& a, const Polytope& b);

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

Polytope hull(int ambient_dim, const std::vector<RatVec>& points);
Polytope intersect(const std::vector<Polytope>& ps);
Polytope dilate(const Polytope& p, const Rat& factor);  // throws on factor <= 0

bool contains(const Polytope& p, const RatVec& x);         // exact, closed
bool contains_strict(const Polytope& p, const RatVec& x);  // relative interior
// Float membership with absolute tolerance eps against unit-normalized facets.
bool contains_tol(const Polytope& p, const std::vector<double>& x, double eps);

// Exact squared distance from a point to the polytope (+infinity when empty
// is represented by nullopt).
std::optional<Rat> dist2_point(const Polytope& p, const RatVec& x);

// Hausdorff distance between polytopes, evaluated on vertices (exact inner
// computation, returned as a double).  Infinity when exactly one is empty.
double hausdorff_gap(const Polytope& p, const Polytope& q);

// max over vertices of p of the Euclidean distance to conv(cloud), plus the
// outward deviation of cloud points from p.  Frank-Wolfe on the cloud side.
double hausdorff_gap_cloud(const Polytope& p, const std::vector<std::vector<double>>& cloud);

double diameter(const Polytope& p);

// Is every vertex cone of p spanned by a basis of the lattice generated by
// `lattice_basis` (columns)?  Vertices must be lattice points (throws
// otherwise); p must be full-dimensional in the lattice span.
bool is_regular_lattice(const Polytope& p, const std::vector<RatVec>& lattice_basis);

// Membership of x in conv(points) without building the hull (exact LP).
bool in_convex_hull(const RatVec& x, const std::vector<RatVec>& points);

}  // namespace momap::poly

#endif  // MOMAP_POLYTOPE_HPP
