#include "momap/polytope.hpp"

#include "momap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace momap::poly {

namespace {

RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Rat norm2(const RatVec& a) {
    Rat s = 0;
    for (const Rat& x : a) s += x * x;
    return s;
}

// Scales a rational row to a primitive integer vector (gcd 1), keeping its
// direction.  Offset is scaled along.
void make_primitive(RatVec& normal, Rat& offset) {
    RatVec all = normal;
    all.push_back(offset);
    BigInt den = common_denominator(all);
    BigInt g = 0;
    for (Rat& x : normal) {
        x *= Rat(den);
        g = boost::multiprecision::gcd(g, BigInt(boost::multiprecision::numerator(x)));
    }
    offset *= Rat(den);
    if (g == 0) return;
    for (Rat& x : normal) x /= Rat(g);
    offset /= Rat(g);
}

struct HalfSpaceLess {
    bool operator()(const HalfSpace& a, const HalfSpace& b) const {
        if (a.normal != b.normal) return lex_less(a.normal, b.normal);
        return a.offset < b.offset;
    }
};

}  // namespace

bool in_convex_hull(const RatVec& x, const std::vector<RatVec>& points) {
    if (points.empty()) return false;
    std::size_t d = x.size();
    lp::Problem prob;
    prob.nvars = points.size();
    prob.nonneg = true;
    for (std::size_t i = 0; i < d; ++i) {
        RatVec row(points.size());
        for (std::size_t k = 0; k < points.size(); ++k) row[k] = points[k][i];
        prob.add_eq(std::move(row), x[i]);
    }
    prob.add_eq(RatVec(points.size(), Rat(1)), Rat(1));
    return lp::feasible_point(prob).has_value();
}

struct Polytope::Impl {
    int ambient = 0;
    std::vector<RatVec> verts;  // canonical: irredundant, lex-sorted
    int affine_dim = -1;
    // chart data: affine hull pivot coordinates (used to rebuild H lazily)
    mutable std::once_flag h_once;
    mutable HRep h;

    const HRep& hrep() const;
};

namespace {

// Calls fn on every k-subset of {0..n-1}, ascending.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        fn(const_cast<const std::vector<std::size_t>&>(c));
        std::size_t j = k;
        bool done = true;
        while (j-- > 0) {
            if (c[j] != j + n - k) {
                ++c[j];
                for (std::size_t l = j + 1; l < k; ++l) c[l] = c[l - 1] + 1;
                done = false;
                break;
            }
        }
        if (done || k == 0) break;
    }
}

// Facet enumeration for a full-dimensional polytope given by chart vertices.
// Candidate hyperplanes run through affinely independent k-subsets.
std::vector<HalfSpace> chart_facets(const std::vector<RatVec>& verts, std::size_t k) {
    std::set<HalfSpace, HalfSpaceLess> out;
    for_each_subset(verts.size(), k, [&](const std::vector<std::size_t>& c) {
        // hyperplane through verts[c...]: normal in the kernel of the direction rows
        RatMat dirs(k >= 1 ? k - 1 : 0, k);
        for (std::size_t r = 0; r + 1 < k; ++r) {
            RatVec d = sub(verts[c[r + 1]], verts[c[0]]);
            for (std::size_t j = 0; j < k; ++j) dirs(r, j) = d[j];
        }
        auto kern = kernel_basis(dirs);
        if (kern.size() != 1) return;  // affinely dependent subset
        RatVec normal = kern[0];
        Rat offset = dot(normal, verts[c[0]]);
        int side = 0;
        for (const RatVec& v : verts) {
            Rat s = dot(normal, v) - offset;
            if (s == 0) continue;
            int sg = s > 0 ? 1 : -1;
            if (side == 0) {
                side = sg;
            } else if (side != sg) {
                return;  // points on both sides: not a supporting hyperplane
            }
        }
        if (side == 0) return;  // all vertices on the hyperplane (can't happen full-dim)
        if (side > 0) {
            for (Rat& x : normal) x = -x;
            offset = -offset;
        }
        make_primitive(normal, offset);
        out.insert(HalfSpace{std::move(normal), std::move(offset)});
    });
    return {out.begin(), out.end()};
}

}  // namespace

const HRep& Polytope::Impl::hrep() const {
    std::call_once(h_once, [this]() {
        HRep out;
        if (verts.empty()) {
            out.ineqs.push_back(HalfSpace{RatVec(ambient, Rat(0)), Rat(-1)});
            h = std::move(out);
            return;
        }
        const RatVec& v0 = verts[0];
        // affine hull: equalities from the left kernel of the direction span
        RatMat dirs(verts.size() - 1, ambient);
        for (std::size_t i = 1; i < verts.size(); ++i) {
            RatVec d = sub(verts[i], v0);
            for (int j = 0; j < ambient; ++j) dirs(i - 1, j) = d[j];
        }
        for (RatVec& n : kernel_basis(dirs)) {
            Rat off = dot(n, v0);
            make_primitive(n, off);
            out.eqs.push_back(HalfSpace{std::move(n), std::move(off)});
        }
        std::sort(out.eqs.begin(), out.eqs.end(), HalfSpaceLess{});

        // chart onto the pivot coordinates of the direction matrix
        RatMat dirs2 = dirs;
        std::vector<std::size_t> piv = row_echelon(dirs2);
        std::size_t k = piv.size();  // affine dimension
        if (k > 0) {
            std::vector<RatVec> chart(verts.size(), RatVec(k));
            for (std::size_t i = 0; i < verts.size(); ++i)
                for (std::size_t j = 0; j < k; ++j) chart[i][j] = verts[i][piv[j]];
            for (HalfSpace hs : chart_facets(chart, k)) {
                RatVec normal(ambient, Rat(0));
                for (std::size_t j = 0; j < k; ++j) normal[piv[j]] = hs.normal[j];
                out.ineqs.push_back(HalfSpace{std::move(normal), hs.offset});
            }
            std::sort(out.ineqs.begin(), out.ineqs.end(), HalfSpaceLess{});
        }
        h = std::move(out);
    });
    return h;
}

Polytope Polytope::empty(int ambient_dim) {
    auto impl = std::make_shared<Impl>();
    impl->ambient = ambient_dim;
    impl->affine_dim = -1;
    Polytope p;
    p.impl_ = std::move(impl);
    return p;
}

Polytope Polytope::from_points(int ambient_dim, std::vector<RatVec> points) {
    for (const RatVec& p : points) {
        if (static_cast<int>(p.size()) != ambient_dim) {
            throw std::invalid_argument("polytope: point dimension mismatch");
        }
    }
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    // a point is a vertex iff it is not in the hull of the others
    std::vector<RatVec> vertices;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<RatVec> others;
        others.reserve(points.size() - 1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) others.push_back(points[j]);
        }
        if (!in_convex_hull(points[i], others)) vertices.push_back(points[i]);
    }
    auto impl = std::make_shared<Impl>();
    impl->ambient = ambient_dim;
    impl->verts = std::move(vertices);
    if (!impl->verts.empty()) {
        RatMat dirs(impl->verts.size() - 1, ambient_dim);
        for (std::size_t i = 1; i < impl->verts.size(); ++i) {
            RatVec d = sub(impl->verts[i], impl->verts[0]);
            for (int j = 0; j < ambient_dim; ++j) dirs(i - 1, j) = d[j];
        }
        impl->affine_dim = static_cast<int>(rank(dirs));
    }
    Polytope p;
    p.impl_ = std::move(impl);
    return p;
}

Polytope Polytope::from_hrep(int ambient_dim, const std::vector<HalfSpace>& ineqs_in,
                             const std::vector<HalfSpace>& eqs_in) {
    // normalize rows; fold equalities into the elimination basis
    std::vector<HalfSpace> eqs = eqs_in;
    std::vector<HalfSpace> ineqs;
    {
        std::set<HalfSpace, HalfSpaceLess> seen;
        std::map<RatVec, Rat> best;  // tightest offset per primitive normal
        for (HalfSpace hs : ineqs_in) {
            make_primitive(hs.normal, hs.offset);
            bool zero = std::all_of(hs.normal.begin(), hs.normal.end(),
                                    [](const Rat& x) { return x == 0; });
            if (zero) {
                if (hs.offset < 0) return Polytope::empty(ambient_dim);  // 0 <= negative
                continue;
            }
            auto it = best.find(hs.normal);
            if (it == best.end()) {
                best.emplace(hs.normal, hs.offset);
            } else if (hs.offset < it->second) {
                it->second = hs.offset;
            }
        }
        for (auto& [n, o] : best) ineqs.push_back(HalfSpace{n, o});
    }

    lp::Problem feas;
    feas.nvars = ambient_dim;
    for (const HalfSpace& hs : ineqs) feas.add_le(hs.normal, hs.offset);
    for (const HalfSpace& hs : eqs) feas.add_eq(hs.normal, hs.offset);
    if (!lp::feasible_point(feas)) return Polytope::empty(ambient_dim);

    // boundedness: the recession cone {Ax <= 0, Ex = 0} must be {0}
    {
        lp::Problem rec;
        rec.nvars = ambient_dim;
        for (const HalfSpace& hs : ineqs) rec.add_le(hs.normal, Rat(0));
        for (const HalfSpace& hs : eqs) rec.add_eq(hs.normal, Rat(0));
        for (int j = 0; j < ambient_dim; ++j) {
            RatVec e(ambient_dim, Rat(0));
            e[j] = 1;
            rec.add_le(e, Rat(1));
            for (Rat& x : e) x = -x;
            rec.add_le(std::move(e), Rat(1));
        }
        for (int j = 0; j < ambient_dim; ++j) {
            RatVec c(ambient_dim, Rat(0));
            c[j] = 1;
            lp::Result hi = lp::maximize(rec, c);
            c[j] = -1;
            lp::Result lo = lp::maximize(rec, c);
            if ((hi.status == lp::Status::Optimal && hi.value > 0) ||
                (lo.status == lp::Status::Optimal && lo.value > 0)) {
                throw std::domain_error("polytope: unbounded halfspace description");
            }
        }
    }

    // vertices = basic feasible solutions: equalities plus (d - rank(eqs))
    // inequalities with a unique common solution
    RatMat eqmat(eqs.size(), ambient_dim);
    for (std::size_t i = 0; i < eqs.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j) eqmat(i, j) = eqs[i].normal[j];
    std::size_t eqrank = eqs.empty() ? 0 : rank(eqmat);
    std::size_t need = ambient_dim - eqrank;
    std::vector<RatVec> points;
    auto try_subset = [&](const std::vector<std::size_t>& subset) {
        RatMat m(eqs.size() + subset.size(), ambient_dim);
        std::vector<Rat> rhs;
        std::size_t r = 0;
        for (const HalfSpace& hs : eqs) {
            for (int j = 0; j < ambient_dim; ++j) m(r, j) = hs.normal[j];
            rhs.push_back(hs.offset);
            ++r;
        }
        for (std::size_t s : subset) {
            for (int j = 0; j < ambient_dim; ++j) m(r, j) = ineqs[s].normal[j];
            rhs.push_back(ineqs[s].offset);
            ++r;
        }
        RatMat mm = m;
        if (rank(mm) != static_cast<std::size_t>(ambient_dim)) return;
        auto x = solve(m, rhs);
        if (!x) return;
        for (const HalfSpace& hs : ineqs) {
            if (dot(hs.normal, *x) > hs.offset) return;
        }
        points.push_back(std::move(*x));
    };
    for_each_subset(ineqs.size(), need, try_subset);
    if (points.empty()) {
        // feasible but no vertex found: cannot happen for a bounded nonempty set
        throw std::logic_error("polytope: no basic feasible solution in bounded set");
    }
    return from_points(ambient_dim, std::move(points));
}

int Polytope::ambient_dim() const { return impl_ ? impl_->ambient : 0; }
bool Polytope::is_empty() const { return !impl_ || impl_->verts.empty(); }
int Polytope::dim() const { return impl_ ? impl_->affine_dim : -1; }

const std::vector<RatVec>& Polytope::vertices() const {
    static const std::vector<RatVec> none;
    return impl_ ? impl_->verts : none;
}

const HRep& Polytope::hrep() const {
    if (!impl_) throw std::logic_error("polytope: default-constructed value");
    return impl_->hrep();
}

bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim() == b.ambient_dim() && a.vertices() == b.vertices();
}

Polytope hull(int ambient_dim, const std::vector<RatVec>& points) {
    return Polytope::from_points(ambient_dim, points);
}

Polytope intersect(const std::vector<Polytope>& ps) {
    if (ps.empty()) throw std::invalid_argument("intersect: no operands");
    int dim = ps[0].ambient_dim();
    std::vector<HalfSpace> ineqs, eqs;
    for (const Polytope& p : ps) {
        if (p.ambient_dim() != dim) throw std::invalid_argument("intersect: dimension mismatch");
        if (p.is_empty()) return Polytope::empty(dim);
        const HRep& h = p.hrep();
        ineqs.insert(ineqs.end(), h.ineqs.begin(), h.ineqs.end());
        eqs.insert(eqs.end(), h.eqs.begin(), h.eqs.end());
    }
    return Polytope::from_hrep(dim, ineqs, eqs);
}

Polytope dilate(const Polytope& p, const Rat& factor) {
    if (factor <= 0) throw std::invalid_argument("dilate: factor must be positive");
    std::vector<RatVec> verts = p.vertices();
    for (RatVec& v : verts)
        for (Rat& x : v) x *= factor;
    return Polytope::from_points(p.ambient_dim(), std::move(verts));
}

bool contains(const Polytope& p, const RatVec& x) {
    if (p.is_empty()) return false;
    const HRep& h = p.hrep();
    for (const HalfSpace& hs : h.eqs) {
        if (dot(hs.normal, x) != hs.offset) return false;
    }
    for (const HalfSpace& hs : h.ineqs) {
        if (dot(hs.normal, x) > hs.offset) return false;
    }
    return true;
}

bool contains_strict(const Polytope& p, const RatVec& x) {
    if (p.is_empty()) return false;
    const HRep& h = p.hrep();
    for (const HalfSpace& hs : h.eqs) {
        if (dot(hs.normal, x) != hs.offset) return false;
    }
    for (const HalfSpace& hs : h.ineqs) {
        if (dot(hs.normal, x) >= hs.offset) return false;
    }
    return true;
}

bool contains_tol(const Polytope& p, const std::vector<double>& x, double eps) {
    if (p.is_empty()) return false;
    const HRep& h = p.hrep();
    auto fdot = [&](const RatVec& n) {
        double s = 0;
        for (std::size_t i = 0; i < n.size(); ++i) s += to_double(n[i]) * x[i];
        return s;
    };
    auto fnorm = [&](const RatVec& n) {
        double s = 0;
        for (const Rat& v : n) s += to_double(v) * to_double(v);
        return std::sqrt(s);
    };
    for (const HalfSpace& hs : h.eqs) {
        if (std::abs(fdot(hs.normal) - to_double(hs.offset)) > eps * fnorm(hs.normal)) return false;
    }
    for (const HalfSpace& hs : h.ineqs) {
        if (fdot(hs.normal) - to_double(hs.offset) > eps * fnorm(hs.normal)) return false;
    }
    return true;
}

std::optional<Rat> dist2_point(const Polytope& p, const RatVec& x) {
    if (p.is_empty()) return std::nullopt;
    if (contains(p, x)) return Rat(0);
    const HRep& h = p.hrep();
    std::size_t d = x.size();
    std::size_t m = h.ineqs.size();
    Rat best;
    bool have = false;

    // project x onto the affine span of (equalities + an active subset) via
    // the KKT system; feasible projections bound the distance, and the
    // nearest face is among the enumerated active sets.
    auto try_active = [&](const std::vector<std::size_t>& subset) {
        std::size_t rows = h.eqs.size() + subset.size();
        RatMat kkt(d + rows, d + rows);
        std::vector<Rat> rhs(d + rows, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            kkt(i, i) = 1;
            rhs[i] = x[i];
        }
        std::size_t r = 0;
        auto add_row = [&](const HalfSpace& hs) {
            for (std::size_t j = 0; j < d; ++j) {
                kkt(d + r, j) = hs.normal[j];
                kkt(j, d + r) = hs.normal[j];
            }
            rhs[d + r] = hs.offset;
            ++r;
        };
        for (const HalfSpace& hs : h.eqs) add_row(hs);
        for (std::size_t s : subset) add_row(h.ineqs[s]);
        auto sol = solve(kkt, rhs);
        if (!sol) return;
        RatVec y(sol->begin(), sol->begin() + d);
        if (!contains(p, y)) return;
        Rat d2 = norm2(sub(y, x));
        if (!have || d2 < best) {
            best = d2;
            have = true;
        }
    };

    std::size_t maxk = std::min(m, d);
    for (std::size_t k = 0; k <= maxk; ++k) {
        for_each_subset(m, k, try_active);
    }
    if (!have) throw std::logic_error("dist2_point: no feasible projection found");
    return best;
}

double hausdorff_gap(const Polytope& p, const Polytope& q) {
    if (p.is_empty() && q.is_empty()) return 0.0;
    if (p.is_empty() || q.is_empty()) return std::numeric_limits<double>::infinity();
    Rat worst(0);
    for (const RatVec& v : p.vertices()) {
        Rat d2 = *dist2_point(q, v);
        if (d2 > worst) worst = d2;
    }
    for (const RatVec& v : q.vertices()) {
        Rat d2 = *dist2_point(p, v);
        if (d2 > worst) worst = d2;
    }
    return std::sqrt(to_double(worst));
}

namespace {

// distance from a point to the convex hull of a float cloud, by Frank-Wolfe
// with exact line search (the linear oracle is a scan over the cloud).
double dist_to_cloud_hull(const std::vector<double>& v,
                          const std::vector<std::vector<double>>& cloud) {
    if (cloud.empty()) return std::numeric_limits<double>::infinity();
    std::size_t d = v.size();
    // start from the closest cloud point
    std::vector<double> y;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cloud) {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i) s += (c[i] - v[i]) * (c[i] - v[i]);
        if (s < best) {
            best = s;
            y = c;
        }
    }
    for (int iter = 0; iter < 500; ++iter) {
        // linear oracle: argmin_c <y - v, c>
        const std::vector<double>* target = nullptr;
        double bestdot = std::numeric_limits<double>::infinity();
        for (const auto& c : cloud) {
            double s = 0;
            for (std::size_t i = 0; i < d; ++i) s += (y[i] - v[i]) * c[i];
            if (s < bestdot) {
                bestdot = s;
                target = &c;
            }
        }
        double gap = 0, dd = 0, num = 0;
        for (std::size_t i = 0; i < d; ++i) {
            double dir = (*target)[i] - y[i];
            gap += -(y[i] - v[i]) * dir;
            dd += dir * dir;
            num += (v[i] - y[i]) * dir;
        }
        if (gap < 1e-14 || dd == 0) break;
        double gamma = std::clamp(num / dd, 0.0, 1.0);
        if (gamma == 0) break;
        for (std::size_t i = 0; i < d; ++i) y[i] += gamma * ((*target)[i] - y[i]);
    }
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) s += (y[i] - v[i]) * (y[i] - v[i]);
    return std::sqrt(s);
}

}  // namespace

double hausdorff_gap_cloud(const Polytope& p, const std::vector<std::vector<double>>& cloud) {
    if (p.is_empty()) return cloud.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    double worst = 0;
    for (const RatVec& v : p.vertices()) {
        std::vector<double> vf(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) vf[i] = to_double(v[i]);
        worst = std::max(worst, dist_to_cloud_hull(vf, cloud));
    }
    // outward deviation of the cloud from p
    for (const auto& c : cloud) {
        if (contains_tol(p, c, 0.0)) continue;
        RatVec cr(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) cr[i] = rat_from_double(c[i]);
        worst = std::max(worst, std::sqrt(to_double(*dist2_point(p, cr))));
    }
    return worst;
}

double diameter(const Polytope& p) {
    const auto& vs = p.vertices();
    double best = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            best = std::max(best, to_double(norm2(sub(vs[i], vs[j]))));
        }
    return std::sqrt(best);
}

bool is_regular_lattice(const Polytope& p, const std::vector<RatVec>& lattice_basis) {
    if (p.is_empty()) throw std::invalid_argument("is_regular_lattice: empty polytope");
    std::size_t k = lattice_basis.size();
    int d = p.ambient_dim();
    RatMat bmat(d, k);
    for (std::size_t j = 0; j < k; ++j)
        for (int i = 0; i < d; ++i) bmat(i, j) = lattice_basis[j][i];

    // lattice coordinates of each vertex; must be integral
    std::vector<RatVec> lat;
    for (const RatVec& v : p.vertices()) {
        auto u = solve(bmat, v);
        if (!u) throw std::invalid_argument("is_regular_lattice: vertex outside lattice span");
        for (const Rat& x : *u) {
            if (boost::multiprecision::denominator(x) != 1) {
                throw std::invalid_argument("is_regular_lattice: non-lattice vertex");
            }
        }
        lat.push_back(std::move(*u));
    }

    Polytope q = Polytope::from_points(static_cast<int>(k), lat);
    if (q.dim() != static_cast<int>(k)) return false;  // vertex cones cannot span
    if (q.dim() == 0) return true;                     // a lattice point
    const auto& verts = q.vertices();
    const HRep& h = q.hrep();

    // vertex adjacency: v,w adjacent iff their common tight facets cut a line
    auto tight = [&](const RatVec& v) {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < h.ineqs.size(); ++i) {
            if (dot(h.ineqs[i].normal, v) == h.ineqs[i].offset) t.push_back(i);
        }
        return t;
    };
    std::vector<std::vector<std::size_t>> tights;
    for (const RatVec& v : verts) tights.push_back(tight(v));

    for (std::size_t a = 0; a < verts.size(); ++a) {
        std::vector<RatVec> edges;
        for (std::size_t b = 0; b < verts.size(); ++b) {
            if (a == b) continue;
            std::vector<std::size_t> common;
            std::set_intersection(tights[a].begin(), tights[a].end(), tights[b].begin(),
                                  tights[b].end(), std::back_inserter(common));
            RatMat m(common.size(), k);
            for (std::size_t r = 0; r < common.size(); ++r)
                for (std::size_t j = 0; j < k; ++j) m(r, j) = h.ineqs[common[r]].normal[j];
            if (rank(m) != k - 1) continue;  // not an edge
            RatVec dir = sub(verts[b], verts[a]);
            // primitive integer direction
            BigInt den = common_denominator(dir);
            BigInt g = 0;
            for (Rat& x : dir) {
                x *= Rat(den);
                g = boost::multiprecision::gcd(g, BigInt(boost::multiprecision::numerator(x)));
            }
            for (Rat& x : dir) x /= Rat(g);
            edges.push_back(std::move(dir));
        }
        if (edges.size() != k) return false;  // non-simplicial vertex cone
        RatMat em(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) em(i, j) = edges[i][j];
        Rat det = determinant(em);
        if (det != 1 && det != -1) return false;
    }
    return true;
}

}  // namespace momap::poly
