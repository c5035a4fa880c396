#include "momap/reps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace momap::reps {

namespace {

void enumerate_exponents(int n, int d, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        int used = 0;
        for (int e : cur) used += e;
        cur.push_back(d - used);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    int used = 0;
    for (int e : cur) used += e;
    for (int e = d - used; e >= 0; --e) {  // lex-descending
        cur.push_back(e);
        enumerate_exponents(n, d, cur, out);
        cur.pop_back();
    }
}

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

GaussRat gauss_pow(const GaussRat& base, int e) {
    GaussRat r(Rat(1));
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

int Rep::basis_index(const std::vector<int>& expo) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), expo,
                               [](const std::vector<int>& a, const std::vector<int>& b) {
                                   return a > b;  // basis is lex-descending
                               });
    if (it != basis.end() && *it == expo) return static_cast<int>(it - basis.begin());
    return -1;
}

Rep sym_power_rep(int n, int d) {
    if (n < 2 || d < 1) throw std::invalid_argument("sym_power_rep: need n >= 2, d >= 1");
    Rep rep;
    rep.n = n;
    rep.d = d;
    std::vector<int> cur;
    enumerate_exponents(n, d, cur, rep.basis);
    if (rep.basis.size() > 10'000) throw std::length_error("sym_power_rep: basis cap exceeded");

    BigInt dfact = factorial(d);
    for (const auto& a : rep.basis) {
        RatVec fund(n - 1);
        for (int i = 0; i + 1 < n; ++i) fund[i] = Rat(a[i] - a[i + 1]);
        rep.rep_weights.push_back(lie::Weight(fund));
        for (Rat& x : fund) x = -x;
        rep.moment_weights.push_back(lie::Weight(fund));
        BigInt m = dfact;
        for (int e : a) m /= factorial(e);
        rep.multinomial.push_back(m);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rep.root_pairs.emplace_back(i, j);
    rep.rs = lie::build_root_system(lie::CartanType::A, n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        rep.raising.push_back(derivation_op(rep, i, i + 1));
        rep.lowering.push_back(derivation_op(rep, i + 1, i));
    }
    return rep;
}

SparseOp derivation_op(const Rep& rep, int i, int j) {
    SparseOp op;
    op.dim = rep.dim();
    for (int k = 0; k < rep.dim(); ++k) {
        const auto& a = rep.basis[k];
        if (a[j] == 0) continue;
        std::vector<int> a2 = a;
        a2[j] -= 1;
        a2[i] += 1;
        int row = rep.basis_index(a2);
        op.entries.emplace_back(row, k, a[j]);
    }
    return op;
}

// ---------------------------------------------------------------------------
// Points

ProjPoint ProjPoint::from_exact(GaussVec coords) {
    ProjPoint p;
    p.exact = true;
    p.ex = std::move(coords);
    p.fl.resize(p.ex.size());
    bool any = false;
    for (std::size_t k = 0; k < p.ex.size(); ++k) {
        p.fl[k] = p.ex[k].to_complex();
        if (!p.ex[k].is_zero()) {
            p.support.push_back(static_cast<int>(k));
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("ProjPoint: zero vector");
    return p;
}

ProjPoint ProjPoint::from_float(CVec coords) {
    ProjPoint p;
    p.exact = false;
    p.fl = std::move(coords);
    double mx = 0;
    for (const Cplx& c : p.fl) mx = std::max(mx, std::abs(c));
    if (mx == 0) throw std::invalid_argument("ProjPoint: zero vector");
    for (std::size_t k = 0; k < p.fl.size(); ++k) {
        if (std::abs(p.fl[k]) > kSupportRelTol * mx) p.support.push_back(static_cast<int>(k));
    }
    return p;
}

double invariant_norm(const Rep& rep, const CVec& coeffs) {
    double s = 0;
    for (int k = 0; k < rep.dim(); ++k) {
        s += std::norm(coeffs[k]) / rep.multinomial[k].convert_to<double>();
    }
    return std::sqrt(s);
}

CVec unitary_coords(const Rep& rep, const CVec& coeffs) {
    CVec out(coeffs.size());
    for (int k = 0; k < rep.dim(); ++k) {
        out[k] = coeffs[k] / std::sqrt(rep.multinomial[k].convert_to<double>());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Samplers

namespace {

std::vector<double> traceless_gaussians(int n, RngStream& rng, double scale) {
    std::vector<double> v(n);
    double mean = 0;
    for (double& x : v) {
        x = scale * rng.gaussian();
        mean += x;
    }
    mean /= n;
    for (double& x : v) x -= mean;
    return v;
}

}  // namespace

GroupSample sample_torus(const Rep& rep, RngStream& rng, double scale) {
    GroupSample g;
    g.log_modulus = traceless_gaussians(rep.n, rng, scale);
    g.phase = traceless_gaussians(rep.n, rng, scale);
    g.nilpotent.assign(rep.root_pairs.size(), Cplx(0, 0));
    return g;
}

GroupSample sample_unipotent(const Rep& rep, RngStream& rng, double scale) {
    GroupSample g;
    g.log_modulus.assign(rep.n, 0.0);
    g.phase.assign(rep.n, 0.0);
    g.nilpotent.resize(rep.root_pairs.size());
    for (Cplx& z : g.nilpotent) z = Cplx(scale * rng.gaussian(), scale * rng.gaussian());
    return g;
}

GroupSample sample_borel(const Rep& rep, RngStream& rng, double scale) {
    GroupSample g = sample_torus(rep, rng, scale);
    for (Cplx& z : g.nilpotent) z = Cplx(scale * rng.gaussian(), scale * rng.gaussian());
    return g;
}

Eigen::MatrixXcd group_matrix(const Rep& rep, const GroupSample& g) {
    int n = rep.n;
    Eigen::MatrixXcd zeta = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t p = 0; p < rep.root_pairs.size(); ++p) {
        auto [i, j] = rep.root_pairs[p];
        zeta(i, j) = g.nilpotent[p];
    }
    // exp of a strictly upper triangular matrix terminates after n terms
    Eigen::MatrixXcd nexp = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k < n; ++k) {
        term = term * zeta / static_cast<double>(k);
        nexp += term;
    }
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        t(i, i) = std::exp(Cplx(g.log_modulus[i], g.phase[i]));
    }
    return t * nexp;
}

// ---------------------------------------------------------------------------
// Actions

ProjPoint act(const Rep& rep, const GroupSample& g, const ProjPoint& z) {
    // unipotent part: exp of the derivation as a terminating series
    CVec v = z.fl;
    int npairs = static_cast<int>(rep.root_pairs.size());
    std::vector<SparseOp> ops;
    for (auto [i, j] : rep.root_pairs) ops.push_back(derivation_op(rep, i, j));
    CVec term = v;
    int cap = rep.d * npairs + 1;
    for (int k = 1; k <= cap; ++k) {
        CVec next(term.size(), Cplx(0, 0));
        bool nonzero = false;
        for (int p = 0; p < npairs; ++p) {
            if (g.nilpotent[p] == Cplx(0, 0)) continue;
            CVec dv = ops[p].apply(term);
            for (std::size_t s = 0; s < next.size(); ++s) next[s] += g.nilpotent[p] * dv[s];
        }
        for (const Cplx& c : next) {
            if (c != Cplx(0, 0)) nonzero = true;
        }
        if (!nonzero) break;
        for (Cplx& c : next) c /= static_cast<double>(k);
        for (std::size_t s = 0; s < v.size(); ++s) v[s] += next[s];
        term = std::move(next);
    }
    // torus part: monomial x^a scales by exp(sum_i a_i (u_i + i theta_i))
    for (int k = 0; k < rep.dim(); ++k) {
        Cplx e(0, 0);
        for (int i = 0; i < rep.n; ++i) {
            e += Cplx(g.log_modulus[i], g.phase[i]) * static_cast<double>(rep.basis[k][i]);
        }
        v[k] *= std::exp(e);
    }
    return ProjPoint::from_float(std::move(v));
}

ProjPoint act(const Rep& rep, const Eigen::MatrixXcd& g, const ProjPoint& z) {
    Eigen::MatrixXcd lift = lift_matrix(rep, g);
    Eigen::VectorXcd v(rep.dim());
    for (int k = 0; k < rep.dim(); ++k) v(k) = z.fl[k];
    Eigen::VectorXcd w = lift * v;
    CVec out(rep.dim());
    for (int k = 0; k < rep.dim(); ++k) out[k] = w(k);
    return ProjPoint::from_float(std::move(out));
}

GaussVec apply_diag_exact(const Rep& rep, const GaussVec& diag, const GaussVec& z) {
    GaussVec out(z.size());
    for (int k = 0; k < rep.dim(); ++k) {
        GaussRat f(Rat(1));
        for (int i = 0; i < rep.n; ++i) f *= gauss_pow(diag[i], rep.basis[k][i]);
        out[k] = f * z[k];
    }
    return out;
}

GaussVec apply_unipotent_exact(const Rep& rep, const GaussMat& zeta, const GaussVec& z) {
    std::vector<std::pair<SparseOp, GaussRat>> terms;
    for (auto [i, j] : rep.root_pairs) {
        if (!zeta(i, j).is_zero()) terms.emplace_back(derivation_op(rep, i, j), zeta(i, j));
    }
    GaussVec acc = z;
    GaussVec power = z;  // D^k z
    BigInt kfact = 1;
    int cap = rep.d * static_cast<int>(rep.root_pairs.size()) + 1;
    for (int k = 1; k <= cap; ++k) {
        GaussVec next(z.size(), GaussRat(Rat(0)));
        bool nonzero = false;
        for (auto& [op, coeff] : terms) {
            GaussVec dv = op.apply(power);
            for (std::size_t s = 0; s < next.size(); ++s) {
                if (!dv[s].is_zero()) {
                    next[s] += coeff * dv[s];
                    nonzero = true;
                }
            }
        }
        if (!nonzero) break;
        power = std::move(next);
        kfact *= k;
        GaussRat inv(Rat(1) / Rat(kfact));
        for (std::size_t s = 0; s < acc.size(); ++s) acc[s] += inv * power[s];
    }
    return acc;
}

GaussMat sample_exact_unipotent(const Rep& rep, RngStream& rng, long long range, long long den) {
    GaussMat zeta(rep.n, rep.n);
    for (auto [i, j] : rep.root_pairs) zeta(i, j) = rng.small_gauss_rational(range, den);
    return zeta;
}

GaussVec sample_exact_torus_diag(const Rep& rep, RngStream& rng, long long range) {
    GaussVec diag(rep.n);
    for (int i = 0; i < rep.n; ++i) {
        Rat p(rng.uniform_int(1, range));
        Rat q(rng.uniform_int(1, range));
        diag[i] = GaussRat(p / q);
    }
    return diag;
}

ProjPoint sample_exact_point(const Rep& rep, RngStream& rng, long long range) {
    GaussVec v(rep.dim());
    bool any = false;
    while (!any) {
        for (GaussRat& c : v) {
            c = rng.small_gauss_rational(range);
            if (!c.is_zero()) any = true;
        }
    }
    return ProjPoint::from_exact(std::move(v));
}

Eigen::MatrixXcd lift_matrix(const Rep& rep, const Eigen::MatrixXcd& g) {
    int D = rep.dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(D, D);
    for (int col = 0; col < D; ++col) {
        // expand prod_j (sum_i g(i,j) x_i)^(a_j)
        std::map<std::vector<int>, Cplx> acc;
        acc[std::vector<int>(rep.n, 0)] = Cplx(1, 0);
        for (int j = 0; j < rep.n; ++j) {
            for (int rep_cnt = 0; rep_cnt < rep.basis[col][j]; ++rep_cnt) {
                std::map<std::vector<int>, Cplx> next;
                for (const auto& [expo, coeff] : acc) {
                    for (int i = 0; i < rep.n; ++i) {
                        if (g(i, j) == Cplx(0, 0)) continue;
                        std::vector<int> e2 = expo;
                        e2[i] += 1;
                        next[e2] += coeff * g(i, j);
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto& [expo, coeff] : acc) {
            int row = rep.basis_index(expo);
            out(row, col) += coeff;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Moment maps

std::vector<double> torus_moment(const Rep& rep, const ProjPoint& z) {
    double total = 0;
    std::vector<double> acc(rep.rank(), 0.0);
    for (int k = 0; k < rep.dim(); ++k) {
        double w = std::norm(z.fl[k]) / rep.multinomial[k].convert_to<double>();
        if (w == 0) continue;
        total += w;
        for (int i = 0; i < rep.rank(); ++i) acc[i] += w * to_double(rep.moment_weights[k].fw[i]);
    }
    if (total == 0) throw std::invalid_argument("torus_moment: zero vector");
    for (double& x : acc) x /= total;
    return acc;
}

lie::Weight torus_moment_exact(const Rep& rep, const ProjPoint& z) {
    if (!z.exact) throw std::invalid_argument("torus_moment_exact: exact coordinates required");
    Rat total = 0;
    RatVec acc(rep.rank(), Rat(0));
    for (int k = 0; k < rep.dim(); ++k) {
        Rat w = z.ex[k].norm2() / Rat(rep.multinomial[k]);
        if (w == 0) continue;
        total += w;
        for (int i = 0; i < rep.rank(); ++i) acc[i] += w * rep.moment_weights[k].fw[i];
    }
    if (total == 0) throw std::invalid_argument("torus_moment_exact: zero vector");
    for (Rat& x : acc) x /= total;
    return lie::Weight(std::move(acc));
}

Eigen::MatrixXcd full_moment(const Rep& rep, const ProjPoint& z) {
    int n = rep.n;
    double nrm2 = 0;
    for (int k = 0; k < rep.dim(); ++k) {
        nrm2 += std::norm(z.fl[k]) / rep.multinomial[k].convert_to<double>();
    }
    if (nrm2 == 0) throw std::invalid_argument("full_moment: zero vector");
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // <E_ij z, z> in the invariant metric, on monomial coefficients
            SparseOp op = derivation_op(rep, i, j);
            CVec w = op.apply(z.fl);
            Cplx s(0, 0);
            for (int k = 0; k < rep.dim(); ++k) {
                s += w[k] * std::conj(z.fl[k]) / rep.multinomial[k].convert_to<double>();
            }
            m(i, j) = -(s / nrm2 - (i == j ? Cplx(static_cast<double>(rep.d) / n, 0) : Cplx(0, 0)));
        }
    return m;
}

double off_chamber_norm(const Rep& rep, const ProjPoint& z) {
    Eigen::MatrixXcd m = full_moment(rep, z);
    double s = 0;
    for (int i = 0; i < rep.n; ++i)
        for (int j = 0; j < rep.n; ++j) {
            if (i != j) s += std::norm(m(i, j));
        }
    return std::sqrt(s);
}

RatVec eps_from_fund(int n, const lie::Weight& w) {
    RatVec eps(n, Rat(0));
    Rat shift = 0;
    for (int j = 0; j + 1 < n; ++j) shift += Rat(j + 1) * w.fw[j];
    shift /= n;
    for (int i = 0; i < n; ++i) {
        Rat s = 0;
        for (int j = i; j + 1 < n; ++j) s += w.fw[j];
        eps[i] = s - shift;
    }
    return eps;
}

lie::Weight fund_from_eps(int n, const RatVec& eps) {
    RatVec fund(n - 1);
    for (int i = 0; i + 1 < n; ++i) fund[i] = eps[i] - eps[i + 1];
    return lie::Weight(std::move(fund));
}

std::vector<double> fund_from_eps_f(int n, const std::vector<double>& eps) {
    std::vector<double> fund(n - 1);
    for (int i = 0; i + 1 < n; ++i) fund[i] = eps[i] - eps[i + 1];
    return fund;
}

// ---------------------------------------------------------------------------
// Flag manifold

FlagPoint FlagPoint::from_matrix(Eigen::MatrixXcd m) {
    int n = static_cast<int>(m.rows());
    Cplx det = m.determinant();
    if (std::abs(det) < 1e-12) throw std::invalid_argument("FlagPoint: singular matrix");
    Cplx scale = std::pow(det, -1.0 / n);
    return FlagPoint{m * scale};
}

std::vector<double> flag_moment(const std::vector<double>& mu_eps, const FlagPoint& h) {
    int n = static_cast<int>(h.g.rows());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(h.g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = q.adjoint() * h.g;
    for (int j = 0; j < n; ++j) {
        if (std::abs(r(j, j)) < 1e-12) throw std::invalid_argument("flag_moment: singular matrix");
        q.col(j) *= r(j, j) / std::abs(r(j, j));  // make R's diagonal positive
    }
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = mu_eps[i];
    Eigen::MatrixXcd m = q * lam.asDiagonal() * q.adjoint();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = m(i, i).real();
    return out;
}

std::vector<double> flag_moment(int n, const lie::Weight& mu, const FlagPoint& h) {
    RatVec eps = eps_from_fund(n, mu);
    std::vector<double> mu_eps(n);
    for (int i = 0; i < n; ++i) mu_eps[i] = to_double(eps[i]);
    return flag_moment(mu_eps, h);
}

// ---------------------------------------------------------------------------
// Limits and Bruhat cells

LimitResult limit_fixed_point(const Rep& rep, const RatVec& eta_eps, const ProjPoint& z) {
    if (!z.exact) throw std::invalid_argument("limit_fixed_point: exact coordinates required");
    if (z.support.empty()) throw std::invalid_argument("limit_fixed_point: zero support");
    // pairing of the flow direction with the rep weight of each supported monomial
    std::vector<Rat> pairing;
    for (int k : z.support) {
        Rat p = 0;
        for (int i = 0; i < rep.n; ++i) p += Rat(rep.basis[k][i]) * eta_eps[i];
        pairing.push_back(p);
    }
    for (std::size_t a = 0; a < pairing.size(); ++a)
        for (std::size_t b = a + 1; b < pairing.size(); ++b) {
            if (pairing[a] == pairing[b]) {
                throw std::invalid_argument(
                    "limit_fixed_point: direction lies on a support hyperplane");
            }
        }
    Rat best = pairing[0];
    for (const Rat& p : pairing) best = std::min(best, p);
    GaussVec lim(rep.dim(), GaussRat(Rat(0)));
    int widx = -1;
    for (std::size_t s = 0; s < z.support.size(); ++s) {
        if (pairing[s] == best) {
            int k = z.support[s];
            lim[k] = z.ex[k];
            widx = k;
        }
    }
    LimitResult res;
    res.weight_index = widx;
    res.component_weight = rep.moment_weights[widx];
    res.limit = ProjPoint::from_exact(std::move(lim));
    return res;
}

namespace {

std::vector<int> perm_from_corner_ranks(int n, const std::function<int(int, int)>& corner_rank) {
    // r(i,j) = rank of rows >= i, cols <= j; the permutation has its pivot in
    // column j at the row where the rank increment appears.
    std::vector<std::vector<int>> r(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r[i][j] = corner_rank(i, j);
    std::vector<int> w(n, -1);
    std::vector<bool> used(n, false);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int d = r[i][j + 1] - r[i + 1][j + 1] - r[i][j] + r[i + 1][j];
            if (d == 1) {
                if (w[j] != -1 || used[i]) {
                    throw std::logic_error("bruhat_cell: rank pattern is not a permutation");
                }
                w[j] = i;
                used[i] = true;
            }
        }
    for (int j = 0; j < n; ++j) {
        if (w[j] == -1) throw std::logic_error("bruhat_cell: rank pattern is not a permutation");
    }
    return w;
}

}  // namespace

BruhatCell bruhat_cell(const GaussMat& h) {
    int n = static_cast<int>(h.rows);
    {
        GaussMat m = h;
        if (rank(m) != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("bruhat_cell: singular matrix");
        }
    }
    auto corner_rank = [&](int i, int j) {
        if (i >= n || j <= 0) return 0;
        GaussMat sub(n - i, j);
        for (int a = i; a < n; ++a)
            for (int b = 0; b < j; ++b) sub(a - i, b) = h(a, b);
        return static_cast<int>(rank(sub));
    };
    BruhatCell cell;
    cell.perm = perm_from_corner_ranks(n, corner_rank);
    return cell;
}

BruhatCell bruhat_cell(const Eigen::MatrixXcd& h, double threshold) {
    int n = static_cast<int>(h.rows());
    double scale = h.norm();
    if (scale == 0) throw std::invalid_argument("bruhat_cell: zero matrix");
    bool ambiguous = false;
    auto corner_rank = [&](int i, int j) {
        if (i >= n || j <= 0) return 0;
        Eigen::MatrixXcd sub = h.block(i, 0, n - i, j);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sub);
        int r = 0;
        for (int k = 0; k < svd.singularValues().size(); ++k) {
            double s = svd.singularValues()(k);
            if (s > threshold * scale) ++r;
            if (s > threshold * scale / 50 && s < threshold * scale * 50) ambiguous = true;
        }
        return r;
    };
    BruhatCell cell;
    cell.perm = perm_from_corner_ranks(n, corner_rank);
    cell.ambiguous = ambiguous;
    return cell;
}

std::vector<int> permutation_word(std::vector<int> perm) {
    // swap descents until sorted; reversing the swap list gives a reduced word
    std::vector<int> swaps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < perm.size(); ++k) {
            if (perm[k] > perm[k + 1]) {
                std::swap(perm[k], perm[k + 1]);
                swaps.push_back(static_cast<int>(k));
                changed = true;
            }
        }
    }
    std::reverse(swaps.begin(), swaps.end());
    return swaps;
}

}  // namespace momap::reps
