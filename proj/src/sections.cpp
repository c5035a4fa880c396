#include "momap/sections.hpp"

#include "momap/lp.hpp"
#include "momap/polytope.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace momap::sections {

namespace {

void enumerate_monos(int nvars, int deg, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == nvars - 1) {
        int used = 0;
        for (int e : cur) used += e;
        cur.push_back(deg - used);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    int used = 0;
    for (int e : cur) used += e;
    for (int e = deg - used; e >= 0; --e) {
        cur.push_back(e);
        enumerate_monos(nvars, deg, cur, out);
        cur.pop_back();
    }
}

GaussRat gauss_pow(const GaussRat& base, int e) {
    GaussRat r{Rat(1)};
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

int PolySpace::index(const std::vector<int>& expo) const {
    auto it = std::lower_bound(monos.begin(), monos.end(), expo,
                               [](const std::vector<int>& a, const std::vector<int>& b) {
                                   return a > b;  // lex-descending order
                               });
    if (it != monos.end() && *it == expo) return static_cast<int>(it - monos.begin());
    return -1;
}

PolySpace poly_space(const reps::Rep& rep, int r) {
    if (r < 1) throw std::invalid_argument("poly_space: degree must be positive");
    PolySpace sp;
    sp.degree = r;
    std::vector<int> cur;
    enumerate_monos(rep.dim(), r, cur, sp.monos);
    if (sp.monos.size() > 200'000) throw std::length_error("poly_space: dimension cap exceeded");
    for (const auto& beta : sp.monos) {
        lie::Weight w = lie::Weight::zero(rep.rank());
        for (int k = 0; k < rep.dim(); ++k) {
            if (beta[k]) w = w + (Rat(beta[k]) * rep.moment_weights[k]);
        }
        sp.weights.push_back(std::move(w));
    }
    return sp;
}

bool Section::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

namespace {

// Matrix of the induced action of the rep operator `op` on the weight block
// `block` of the section space, mapping into the whole space's indices:
// z*_k |-> -sum_l op_{kl} z*_l extended as a derivation.
// Returns rows keyed by target monomial index.
std::map<int, RatVec> operator_block(const PolySpace& sp, const reps::SparseOp& op,
                                     const std::vector<int>& block) {
    std::map<int, RatVec> rows;
    for (std::size_t c = 0; c < block.size(); ++c) {
        const std::vector<int>& beta = sp.monos[block[c]];
        for (const auto& [k, l, val] : op.entries) {
            if (beta[k] == 0) continue;
            std::vector<int> beta2 = beta;
            beta2[k] -= 1;
            beta2[l] += 1;
            int target = sp.index(beta2);
            auto [it, inserted] = rows.try_emplace(target, RatVec(block.size(), Rat(0)));
            it->second[c] -= Rat(beta[k]) * Rat(val);
        }
    }
    return rows;
}

std::vector<Section> kernel_sections(const PolySpace& sp, const std::vector<int>& block,
                                     const std::vector<const reps::SparseOp*>& ops,
                                     const lie::Weight& nu) {
    if (block.empty()) return {};
    std::vector<RatVec> stacked;
    for (const reps::SparseOp* op : ops) {
        for (auto& [target, row] : operator_block(sp, *op, block)) stacked.push_back(row);
    }
    RatMat m(stacked.size(), block.size());
    for (std::size_t i = 0; i < stacked.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j) m(i, j) = stacked[i][j];
    std::vector<Section> out;
    for (const RatVec& v : kernel_basis(m)) {
        Section s;
        s.degree = sp.degree;
        s.weight = nu;
        s.coeffs.assign(sp.dim(), Rat(0));
        for (std::size_t j = 0; j < block.size(); ++j) s.coeffs[block[j]] = v[j];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<int> weight_block(const PolySpace& sp, const lie::Weight& nu) {
    std::vector<int> block;
    for (int i = 0; i < sp.dim(); ++i) {
        if (sp.weights[i] == nu) block.push_back(i);
    }
    return block;
}

}  // namespace

std::vector<Section> n_invariant_sections(const reps::Rep& rep, int r, const lie::Weight& nu) {
    PolySpace sp = poly_space(rep, r);
    std::vector<const reps::SparseOp*> ops;
    for (const auto& op : rep.raising) ops.push_back(&op);
    return kernel_sections(sp, weight_block(sp, nu), ops, nu);
}

std::vector<Section> g_invariant_sections(const reps::Rep& rep, int r) {
    PolySpace sp = poly_space(rep, r);
    std::vector<const reps::SparseOp*> ops;
    for (const auto& op : rep.raising) ops.push_back(&op);
    for (const auto& op : rep.lowering) ops.push_back(&op);
    lie::Weight zero = lie::Weight::zero(rep.rank());
    return kernel_sections(sp, weight_block(sp, zero), ops, zero);
}

GaussRat evaluate(const Section& s, const PolySpace& space, const reps::ProjPoint& x) {
    if (!x.exact) throw std::invalid_argument("evaluate: exact coordinates required");
    GaussRat total{Rat(0)};
    for (int i = 0; i < space.dim(); ++i) {
        if (s.coeffs[i] == 0) continue;
        GaussRat term{s.coeffs[i]};
        const auto& beta = space.monos[i];
        for (std::size_t k = 0; k < beta.size(); ++k) {
            if (beta[k]) term *= gauss_pow(x.ex[k], beta[k]);
        }
        total += term;
    }
    return total;
}

reps::Cplx evaluate_f(const Section& s, const PolySpace& space, const reps::CVec& coeffs) {
    reps::Cplx total(0, 0);
    for (int i = 0; i < space.dim(); ++i) {
        if (s.coeffs[i] == 0) continue;
        reps::Cplx term(to_double(s.coeffs[i]), 0);
        const auto& beta = space.monos[i];
        for (std::size_t k = 0; k < beta.size(); ++k) {
            for (int e = 0; e < beta[k]; ++e) term *= coeffs[k];
        }
        total += term;
    }
    return total;
}

double fs_norm(const reps::Rep& rep, const Section& s, const reps::ProjPoint& z) {
    PolySpace sp = poly_space(rep, s.degree);
    double val = std::abs(evaluate_f(s, sp, z.fl));
    double nrm = reps::invariant_norm(rep, z.fl);
    if (nrm == 0) throw std::invalid_argument("fs_norm: zero vector");
    return val / std::pow(nrm, s.degree);
}

// ---------------------------------------------------------------------------
// C-sets

CSet c_set(const reps::Rep& rep, const reps::ProjPoint& x, int r_max) {
    if (!x.exact) throw std::invalid_argument("c_set: exact coordinates required");
    if (r_max < 1) throw std::invalid_argument("c_set: r_max must be positive");
    CSet cs;
    cs.r_max = r_max;
    std::map<lie::Weight, CSetMember> found;
    for (int r = 1; r <= r_max; ++r) {
        PolySpace sp = poly_space(rep, r);
        // distinct dominant weights of this degree
        std::vector<lie::Weight> nus;
        for (const auto& w : sp.weights) {
            if (lie::is_dominant(rep.rs, w) && std::find(nus.begin(), nus.end(), w) == nus.end()) {
                nus.push_back(w);
            }
        }
        for (const lie::Weight& nu : nus) {
            lie::Weight lambda = (Rat(1) / Rat(r)) * nu;
            if (found.count(lambda)) continue;
            std::vector<const reps::SparseOp*> ops;
            for (const auto& op : rep.raising) ops.push_back(&op);
            std::vector<Section> basis = kernel_sections(sp, weight_block(sp, nu), ops, nu);
            for (Section& s : basis) {
                GaussRat v = evaluate(s, sp, x);
                if (!v.is_zero()) {
                    CSetMember m;
                    m.lambda = lambda;
                    m.witness_degree = r;
                    m.witness = std::move(s);
                    m.value = v;
                    found.emplace(lambda, std::move(m));
                    break;
                }
            }
        }
    }
    for (auto& [lam, mem] : found) cs.members.push_back(std::move(mem));
    return cs;
}

// ---------------------------------------------------------------------------
// Borel directions

BorelDir BorelDir::zero(int n) {
    BorelDir d;
    d.phase.assign(n, 0.0);
    d.boost.assign(n, 0.0);
    d.nilpotent = Eigen::MatrixXcd::Zero(n, n);
    return d;
}

Eigen::MatrixXcd BorelDir::matrix() const {
    int n = static_cast<int>(phase.size());
    Eigen::MatrixXcd m = nilpotent;
    for (int i = 0; i < n; ++i) m(i, i) += reps::Cplx(boost[i], phase[i]);
    return m;
}

Eigen::MatrixXcd pr_map(const BorelDir& xi) {
    int n = static_cast<int>(xi.phase.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    const reps::Cplx inv2i(0, -0.5);  // 1/(2i)
    for (int i = 0; i < n; ++i) {
        out(i, i) = reps::Cplx(0, -xi.boost[i]);  // Im(diag(u)) = -i diag(u)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            out(i, j) += inv2i * (xi.nilpotent(i, j) + std::conj(xi.nilpotent(j, i)));
        }
    }
    return out;
}

namespace {

// <Phi(z), Y> for anti-Hermitian Y, with Phi the full moment matrix.
double moment_pairing(const Eigen::MatrixXcd& moment, const Eigen::MatrixXcd& y) {
    reps::Cplx tr = (moment * y).trace();
    return (reps::Cplx(0, -1) * tr).real();
}

// weight functional on an anti-Hermitian matrix: pairs the weight's
// epsilon-coordinates with the torus component (diagonal / i), zero on the
// off-diagonal complement.
double weight_pairing(int n, const lie::Weight& w, const Eigen::MatrixXcd& y) {
    RatVec eps = reps::eps_from_fund(n, w);
    double s = 0;
    for (int i = 0; i < n; ++i) s += to_double(eps[i]) * y(i, i).imag();
    return s;
}

}  // namespace

NormDerivative norm_log_derivative(const reps::Rep& rep, const Section& s,
                                   const reps::ProjPoint& z, const BorelDir& xi, double step) {
    PolySpace sp = poly_space(rep, s.degree);
    double base = std::abs(evaluate_f(s, sp, z.fl));
    double znorm = reps::invariant_norm(rep, z.fl);
    if (base < 1e-300 * std::pow(znorm, s.degree)) {
        throw std::invalid_argument("norm_log_derivative: section vanishes at the point");
    }

    NormDerivative out;
    Eigen::MatrixXcd pr = pr_map(xi);
    Eigen::MatrixXcd moment = reps::full_moment(rep, z);
    double lambda_pr = weight_pairing(rep.n, s.weight, pr);  // nu = r * lambda
    double phi_pr = moment_pairing(moment, pr);
    out.analytic = kNormDerivativeScale * (-lambda_pr + s.degree * phi_pr);

    Eigen::MatrixXcd x = xi.matrix();
    auto log_norm2 = [&](double t) {
        Eigen::MatrixXcd flow = (t * x).exp();
        reps::ProjPoint w = reps::act(rep, flow, z);
        double v = std::abs(evaluate_f(s, sp, w.fl));
        double nn = reps::invariant_norm(rep, w.fl);
        return 2.0 * (std::log(v) - s.degree * std::log(nn));
    };
    out.finite_diff = (log_norm2(step) - log_norm2(-step)) / (2.0 * step);
    return out;
}

// ---------------------------------------------------------------------------
// Norm maximization

namespace {

std::vector<BorelDir> borel_basis(int n) {
    std::vector<BorelDir> dirs;
    for (int i = 0; i + 1 < n; ++i) {  // coroot boosts
        BorelDir d = BorelDir::zero(n);
        d.boost[i] = 1.0;
        d.boost[i + 1] = -1.0;
        dirs.push_back(d);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            BorelDir d = BorelDir::zero(n);
            d.nilpotent(i, j) = reps::Cplx(1, 0);
            dirs.push_back(d);
            d.nilpotent(i, j) = reps::Cplx(0, 1);
            dirs.push_back(d);
        }
    return dirs;
}

reps::CVec normalized(const reps::Rep& rep, const reps::CVec& v) {
    double n = reps::invariant_norm(rep, v);
    reps::CVec out = v;
    for (reps::Cplx& c : out) c /= n;
    return out;
}

}  // namespace

MaxNormResult max_norm_on_borel_orbit(const reps::Rep& rep, const Section& s,
                                      const reps::ProjPoint& x, int budget, RngStream& rng) {
    PolySpace sp = poly_space(rep, s.degree);
    {
        double v0 = std::abs(evaluate_f(s, sp, x.fl));
        if (v0 == 0) throw std::invalid_argument("max_norm_on_borel_orbit: s(x) = 0");
    }
    std::vector<BorelDir> dirs = borel_basis(rep.n);
    RatVec nu_eps = reps::eps_from_fund(rep.n, s.weight);
    std::vector<Eigen::MatrixXcd> prs;
    prs.reserve(dirs.size());
    for (const BorelDir& d : dirs) prs.push_back(pr_map(d));

    const double grad_tol = 1e-6;
    const std::vector<double> start_scales = {0.0, 0.1, 1.0, 10.0};
    int iters_per_start = std::max(50, budget / static_cast<int>(start_scales.size()));

    MaxNormResult best;
    best.norm = -1;
    int total_iters = 0;

    for (double scale : start_scales) {
        reps::CVec z;
        if (scale == 0.0) {
            z = normalized(rep, x.fl);
        } else {
            reps::GroupSample g = reps::sample_borel(rep, rng, scale);
            reps::ProjPoint moved = reps::act(rep, g, x);
            if (std::abs(evaluate_f(s, sp, moved.fl)) == 0) continue;  // left the open set
            z = normalized(rep, moved.fl);
        }
        double step = 0.1;
        bool converged = false;
        double grad_norm = 0;
        for (int it = 0; it < iters_per_start; ++it) {
            ++total_iters;
            reps::ProjPoint zp = reps::ProjPoint::from_float(z);
            Eigen::MatrixXcd moment = reps::full_moment(rep, zp);
            std::vector<double> grad(dirs.size());
            grad_norm = 0;
            for (std::size_t k = 0; k < dirs.size(); ++k) {
                double lam = 0;
                for (int i = 0; i < rep.n; ++i) {
                    lam += to_double(nu_eps[i]) * prs[k](i, i).imag();
                }
                double phi = moment_pairing(moment, prs[k]);
                grad[k] = kNormDerivativeScale * (-lam + s.degree * phi);
                grad_norm += grad[k] * grad[k];
            }
            grad_norm = std::sqrt(grad_norm);
            if (grad_norm < grad_tol) {
                converged = true;
                break;
            }
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(rep.n, rep.n);
            for (std::size_t k = 0; k < dirs.size(); ++k) h += grad[k] * dirs[k].matrix();
            double cur = std::log(std::abs(evaluate_f(s, sp, z)));
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                Eigen::MatrixXcd flow = (step / std::max(1.0, grad_norm) * h).exp();
                Eigen::MatrixXcd lift = reps::lift_matrix(rep, flow);
                reps::CVec z2(rep.dim());
                for (int a = 0; a < rep.dim(); ++a) {
                    reps::Cplx acc(0, 0);
                    for (int b = 0; b < rep.dim(); ++b) acc += lift(a, b) * z[b];
                    z2[a] = acc;
                }
                z2 = normalized(rep, z2);
                double nxt = std::log(std::abs(evaluate_f(s, sp, z2)));
                if (nxt > cur) {
                    z = std::move(z2);
                    step = std::min(step * 1.5, 10.0);
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;  // stuck at float resolution
        }
        reps::ProjPoint zp = reps::ProjPoint::from_float(z);
        double nrm = fs_norm(rep, s, zp);
        if (nrm > best.norm) {
            best.argmax = zp;
            best.norm = nrm;
            best.moment = reps::torus_moment(rep, zp);
            best.off_chamber = reps::off_chamber_norm(rep, zp);
            best.converged = converged;
        }
    }
    best.iterations = total_iters;
    return best;
}

// ---------------------------------------------------------------------------
// Semistability

SemistableResult semistable(const reps::Rep& rep, const reps::ProjPoint& x, SemistableMode mode,
                            int r_max) {
    SemistableResult res;
    res.r_max = r_max;
    switch (mode) {
        case SemistableMode::TorusExact: {
            if (!x.exact) throw std::invalid_argument("semistable: exact coordinates required");
            // 0 in hull{mu_k : k in supp(x)} by exact LP membership
            std::vector<RatVec> pts;
            for (int k : x.support) pts.push_back(rep.moment_weights[k].fw);
            RatVec zero(rep.rank(), Rat(0));
            res.semistable = poly::in_convex_hull(zero, pts);
            std::ostringstream os;
            os << "0 " << (res.semistable ? "in" : "not in") << " hull of " << pts.size()
               << " support moment weights";
            res.certificate = os.str();
            break;
        }
        case SemistableMode::Unipotent: {
            CSet cs = c_set(rep, x, r_max);
            res.semistable = !cs.members.empty();
            res.truncated = !res.semistable;
            if (res.semistable) {
                const CSetMember& m = cs.members.front();
                res.witness = m.witness;
                res.witness_degree = m.witness_degree;
                std::ostringstream os;
                os << "N-invariant witness of weight " << lie::to_string(m.witness.weight)
                   << " degree " << m.witness_degree << " value " << format_gauss(m.value);
                res.certificate = os.str();
            } else {
                res.certificate = "no N-invariant witness up to r_max (truncated verdict)";
            }
            break;
        }
        case SemistableMode::Reductive: {
            if (!x.exact) throw std::invalid_argument("semistable: exact coordinates required");
            for (int r = 1; r <= r_max && !res.semistable; ++r) {
                PolySpace sp = poly_space(rep, r);
                for (Section& s : g_invariant_sections(rep, r)) {
                    GaussRat v = evaluate(s, sp, x);
                    if (!v.is_zero()) {
                        res.semistable = true;
                        res.witness = std::move(s);
                        res.witness_degree = r;
                        std::ostringstream os;
                        os << "G-invariant witness of degree " << r << " value "
                           << format_gauss(v);
                        res.certificate = os.str();
                        break;
                    }
                }
            }
            if (!res.semistable) {
                res.truncated = true;
                res.certificate = "no G-invariant witness up to r_max (truncated verdict)";
            }
            break;
        }
    }
    return res;
}

}  // namespace momap::sections
