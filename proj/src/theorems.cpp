#include "momap/theorems.hpp"

#include "momap/lp.hpp"
#include "momap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace momap::theorems {

void VerificationReport::add(const std::string& name, bool pass, double gap, double tol,
                             const std::string& note) {
    checks.push_back(CheckResult{name, pass, gap, tol, note});
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string digest(const std::string& canonical_inputs) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_inputs) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

std::vector<double> to_floats(const RatVec& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

std::string weight_list_string(const std::vector<lie::Weight>& ws) {
    std::ostringstream os;
    for (const auto& w : ws) os << lie::to_string(w);
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Schubert polytopes

poly::Polytope schubert_polytope(const lie::WeylGroup& group, const lie::WeylElement& w,
                                 const lie::Weight& mu) {
    const lie::RootSystem& rs = group.root_system();
    if (!lie::is_dominant(rs, mu)) {
        throw std::invalid_argument("schubert_polytope: mu must be dominant");
    }
    std::vector<RatVec> points;
    for (const lie::WeylElement& v : group.bruhat_interval(w)) {
        points.push_back(lie::weyl_act(rs, v, mu).fw);
    }
    return poly::hull(rs.rank, points);
}

std::vector<int> weyl_permutation(const lie::WeylGroup& group, const lie::WeylElement& w) {
    const lie::RootSystem& rs = group.root_system();
    if (rs.type != lie::CartanType::A) {
        throw std::invalid_argument("weyl_permutation: type A only");
    }
    int n = rs.rank + 1;
    // match the epsilon coordinates of rho and w(rho); rho has distinct entries
    lie::Weight rho = lie::weyl_vector(rs);
    RatVec before = reps::eps_from_fund(n, rho);
    RatVec after = reps::eps_from_fund(n, lie::weyl_act(rs, w, rho));
    std::vector<int> perm(n, -1);  // eps_i -> eps_perm(i)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (after[j] == before[i]) {
                perm[i] = j;
                break;
            }
        }
        if (perm[i] == -1) throw std::logic_error("weyl_permutation: no match");
    }
    return perm;
}

VerificationReport check_schubert(const lie::WeylGroup& group, const lie::WeylElement& w,
                                  const lie::Weight& mu, long samples, std::uint64_t seed) {
    const lie::RootSystem& rs = group.root_system();
    int n = rs.rank + 1;
    if (rs.type != lie::CartanType::A || n > 4) {
        throw std::invalid_argument("check_schubert: type A with n <= 4 only");
    }
    VerificationReport rep;
    rep.theorem_id = "schubert-polytope";
    rep.seed = seed;
    rep.samples_requested = samples;
    {
        std::ostringstream os;
        os << rs.name() << " w=";
        for (int i : w.word) os << i;
        os << " mu=" << lie::to_string(mu) << " samples=" << samples << " seed=" << seed;
        rep.inputs_digest = digest(os.str());
    }

    poly::Polytope pred = schubert_polytope(group, w, mu);
    auto interval = group.bruhat_interval(w);

    // (b) exact vertex attainment at the torus-fixed points vB
    double vert_gap = 0;
    for (const lie::WeylElement& v : interval) {
        std::vector<int> perm = weyl_permutation(group, v);
        Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < n; ++j) pm(perm[j], j) = 1.0;
        std::vector<double> phi = reps::flag_moment(n, mu, reps::FlagPoint{pm});
        RatVec expect = reps::eps_from_fund(n, lie::weyl_act(rs, v, mu));
        for (int i = 0; i < n; ++i) vert_gap = std::max(vert_gap, std::abs(phi[i] - to_double(expect[i])));
    }
    rep.add("vertex-attainment", vert_gap < 1e-10, vert_gap, 1e-10);

    // (a) containment of sampled Borel-orbit moments
    reps::Rep carrier = reps::sym_power_rep(n, 1);  // provides the root pairs and sampling
    RngStream rng(seed, 1);
    std::vector<int> wperm = weyl_permutation(group, w);
    Eigen::MatrixXcd wmat = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) wmat(wperm[j], j) = 1.0;
    const double contain_tol = 1e-7;
    long violations = 0;
    std::vector<std::vector<double>> cloud;
    const double scales[3] = {0.1, 1.0, 10.0};
    for (long i = 0; i < samples; ++i) {
        reps::GroupSample g = reps::sample_borel(carrier, rng, scales[i % 3]);
        Eigen::MatrixXcd b = reps::group_matrix(carrier, g);
        Eigen::MatrixXcd h = b * wmat;
        std::vector<double> phi;
        try {
            phi = reps::flag_moment(n, mu, reps::FlagPoint::from_matrix(h));
        } catch (const std::invalid_argument&) {
            ++rep.samples_skipped;
            continue;
        }
        ++rep.samples_used;
        std::vector<double> fund = reps::fund_from_eps_f(n, phi);
        if (!poly::contains_tol(pred, fund, contain_tol)) ++violations;
        cloud.push_back(std::move(fund));
    }
    rep.add("sample-containment", violations == 0, static_cast<double>(violations), 0,
            "violations at tolerance 1e-7");

    // (c) Hausdorff gap between hull(samples + vertices) and the prediction
    for (const lie::WeylElement& v : interval) {
        cloud.push_back(to_floats(lie::weyl_act(rs, v, mu).fw));
    }
    double diam = poly::diameter(pred);
    double gap = poly::hausdorff_gap_cloud(pred, cloud);
    double tol = diam > 0 ? 0.05 * diam : 1e-9;
    rep.add("hull-gap", gap < tol, gap, tol, "hull(samples + vertex orbit) vs prediction");
    return rep;
}

// ---------------------------------------------------------------------------
// Atiyah polytopes

poly::Polytope atiyah_polytope(const reps::Rep& rep, const reps::ProjPoint& x) {
    if (!x.exact) throw std::invalid_argument("atiyah_polytope: exact coordinates required");
    std::vector<RatVec> pts;
    for (int k : x.support) pts.push_back(rep.moment_weights[k].fw);
    return poly::hull(rep.rank(), pts);
}

VerificationReport check_atiyah(const reps::Rep& rep, const reps::ProjPoint& x, long samples,
                                std::uint64_t seed) {
    VerificationReport out;
    out.theorem_id = "atiyah-polytope";
    out.seed = seed;
    out.samples_requested = samples;
    {
        std::ostringstream os;
        os << "sym n=" << rep.n << " d=" << rep.d << " support=";
        for (int k : x.support) os << k << ",";
        os << " samples=" << samples << " seed=" << seed;
        out.inputs_digest = digest(os.str());
    }
    poly::Polytope pred = atiyah_polytope(rep, x);

    // exact torus samples stay strictly inside (relative interior)
    RngStream rng(seed, 2);
    long violations = 0;
    for (long i = 0; i < samples; ++i) {
        GaussVec diag = reps::sample_exact_torus_diag(rep, rng, 2 + (i % 11));
        reps::ProjPoint y = reps::ProjPoint::from_exact(reps::apply_diag_exact(rep, diag, x.ex));
        lie::Weight m = reps::torus_moment_exact(rep, y);
        if (!poly::contains_strict(pred, m.fw)) ++violations;
        ++out.samples_used;
    }
    out.add("torus-sample-interior", violations == 0, static_cast<double>(violations), 0,
            "exact strict containment");

    // each vertex attained exactly by a one-parameter limit in its normal cone
    bool attained = true;
    std::string fail_note;
    for (const RatVec& v : pred.vertices()) {
        // find eta with the vertex weight strictly minimal pairing among the support
        int vk = -1;
        lp::Problem prob;
        prob.nvars = rep.n;
        for (int k : x.support) {
            if (rep.moment_weights[k].fw == v) {
                vk = k;
                continue;
            }
        }
        if (vk == -1) {
            attained = false;
            fail_note = "vertex is not a support weight";
            break;
        }
        for (int k : x.support) {
            if (rep.moment_weights[k].fw == v) continue;
            RatVec row(rep.n, Rat(0));
            for (int i = 0; i < rep.n; ++i) {
                row[i] = Rat(rep.basis[k][i] - rep.basis[vk][i]);
            }
            prob.add_ge(std::move(row), Rat(1));
        }
        auto eta = lp::feasible_point(prob);
        if (!eta) {
            attained = false;
            fail_note = "no separating direction (vertex not extreme?)";
            break;
        }
        // perturb until the direction separates all support weights pairwise
        RatVec eta_ok = *eta;
        for (int attempt = 0; attempt < 64; ++attempt) {
            bool distinct = true;
            std::vector<Rat> pair;
            for (int k : x.support) {
                Rat p = 0;
                for (int i = 0; i < rep.n; ++i) p += Rat(rep.basis[k][i]) * eta_ok[i];
                pair.push_back(p);
            }
            for (std::size_t a = 0; a < pair.size() && distinct; ++a)
                for (std::size_t b = a + 1; b < pair.size(); ++b) {
                    if (pair[a] == pair[b]) {
                        distinct = false;
                        break;
                    }
                }
            Rat vp = 0;
            for (int i = 0; i < rep.n; ++i) vp += Rat(rep.basis[vk][i]) * eta_ok[i];
            bool minimal = distinct;
            if (distinct) {
                for (std::size_t a = 0; a < pair.size(); ++a) {
                    if (x.support[a] != vk && pair[a] <= vp) minimal = false;
                }
            }
            if (minimal) break;
            Rat delta = Rat(1) / Rat(BigInt(1) << (attempt + 3));
            eta_ok = *eta;
            for (int i = 0; i < rep.n; ++i) eta_ok[i] += delta * Rat(i + 1) * Rat(i + 1);
        }
        reps::LimitResult lim = reps::limit_fixed_point(rep, eta_ok, x);
        if (!(lim.component_weight.fw == v)) {
            attained = false;
            fail_note = "limit reached a different component";
            break;
        }
    }
    out.add("vertex-attainment", attained, attained ? 0 : 1, 0, fail_note);

    // Cor 1.3(iii): vertices are lattice points
    bool integral = true;
    for (const RatVec& v : pred.vertices()) {
        for (const Rat& c : v) {
            if (boost::multiprecision::denominator(c) != 1) integral = false;
        }
    }
    out.add("vertex-integrality", integral, integral ? 0 : 1, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Main pipeline

MainVerification verify_main(const reps::Rep& rep, const reps::ProjPoint& x, int r_max,
                             long samples, std::uint64_t seed) {
    if (!x.exact) throw std::invalid_argument("verify_main: exact coordinates required");
    MainVerification out;
    out.report.theorem_id = "moment-polytope-main";
    out.report.seed = seed;
    out.report.samples_requested = samples;
    {
        std::ostringstream os;
        os << "sym n=" << rep.n << " d=" << rep.d << " x=";
        for (const GaussRat& c : x.ex) os << format_gauss(c) << ";";
        os << " rmax=" << r_max << " samples=" << samples << " seed=" << seed;
        out.report.inputs_digest = digest(os.str());
    }

    out.cset = sections::c_set(rep, x, r_max);
    if (out.cset.members.empty()) {
        out.unipotently_unstable = true;
        out.hulls.assign(r_max, poly::Polytope::empty(rep.rank()));
        out.report.notes.push_back(
            "C-set empty up to r_max: point is unipotently unstable at this truncation");
        out.report.add("unipotently-unstable", true, 0, 0, "empty C-set reported, not a failure");
        return out;
    }

    for (int r = 1; r <= r_max; ++r) {
        std::vector<RatVec> pts;
        for (const auto& m : out.cset.members) {
            if (m.witness_degree <= r) pts.push_back(m.lambda.fw);
        }
        out.hulls.push_back(poly::hull(rep.rank(), pts));
    }

    // (a) monotone growth inside the dominant chamber
    bool monotone = true;
    for (int r = 0; r + 1 < r_max; ++r) {
        for (const RatVec& v : out.hulls[r].vertices()) {
            if (!poly::contains(out.hulls[r + 1], v)) monotone = false;
        }
    }
    bool dominant = true;
    for (const auto& m : out.cset.members) {
        if (!lie::is_dominant(rep.rs, m.lambda)) dominant = false;
    }
    out.report.add("hull-monotone", monotone, monotone ? 0 : 1, 0);
    out.report.add("members-dominant", dominant, dominant ? 0 : 1, 0);

    // (b) stabilization between the last two truncations
    if (r_max >= 2) {
        double gap = poly::hausdorff_gap(out.hulls[r_max - 2], out.hulls[r_max - 1]);
        out.report.add("hull-stabilization", true, gap, 0,
                       "Hausdorff gap of the last truncation step (informative)");
    }

    // (c) Thm 2.4 for every member: norm maximization lands on the member
    RngStream rng(seed, 3);
    const double tol = 1e-3;
    for (const auto& m : out.cset.members) {
        sections::MaxNormResult mx =
            sections::max_norm_on_borel_orbit(rep, m.witness, x, 4000, rng);
        double dev = 0;
        for (int i = 0; i < rep.rank(); ++i) {
            dev = std::max(dev, std::abs(mx.moment[i] - to_double(m.lambda.fw[i])));
        }
        std::ostringstream os;
        os << "member " << lie::to_string(m.lambda) << (mx.converged ? "" : " (non-converged)");
        out.report.add("norm-max-moment", mx.converged && dev < tol, dev, tol, os.str());
        out.report.add("norm-max-off-chamber", mx.converged && mx.off_chamber < tol,
                       mx.off_chamber, tol, os.str());
    }

    // (d) sampled Borel moments that land near t*_+ stay inside the hull
    const poly::Polytope& hull = out.hulls[r_max - 1];
    long violations = 0;
    long near_chamber = 0;
    const double scales[3] = {0.1, 1.0, 10.0};
    for (long i = 0; i < samples; ++i) {
        reps::GroupSample g = reps::sample_borel(rep, rng, scales[i % 3]);
        reps::ProjPoint z = reps::act(rep, g, x);
        ++out.report.samples_used;
        if (reps::off_chamber_norm(rep, z) >= 1e-3) continue;
        std::vector<double> mom = reps::torus_moment(rep, z);
        bool dom = std::all_of(mom.begin(), mom.end(), [](double c) { return c > -1e-9; });
        if (!dom) continue;
        ++near_chamber;
        if (!poly::contains_tol(hull, mom, 1e-2)) ++violations;
    }
    {
        std::ostringstream os;
        os << near_chamber << " of " << samples << " samples landed near the chamber";
        out.report.add("sampled-moments-inside", violations == 0,
                       static_cast<double>(violations), 0, os.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Intersection formula

IntersectionResult intersection_gap(const reps::Rep& rep, const reps::ProjPoint& x,
                                    long n_samples, int r_max, std::uint64_t seed,
                                    double gap_tol) {
    if (!x.exact) throw std::invalid_argument("intersection_gap: exact coordinates required");
    IntersectionResult out;
    out.report.theorem_id = "intersection-formula";
    out.report.seed = seed;
    out.report.samples_requested = n_samples;
    {
        std::ostringstream os;
        os << "sym n=" << rep.n << " d=" << rep.d << " x=";
        for (const GaussRat& c : x.ex) os << format_gauss(c) << ";";
        os << " translates=" << n_samples << " rmax=" << r_max << " seed=" << seed;
        out.report.inputs_digest = digest(os.str());
    }

    // RHS: the dominant cone cut of the intersected Atiyah polytopes of exact
    // unipotent translates (identity always included)
    RngStream rng(seed, 4);
    std::vector<poly::HalfSpace> ineqs, eqs;
    bool full_support_all = static_cast<int>(x.support.size()) == rep.dim();
    auto add_operand = [&](const reps::ProjPoint& pt) {
        poly::Polytope ap = atiyah_polytope(rep, pt);
        const poly::HRep& h = ap.hrep();
        ineqs.insert(ineqs.end(), h.ineqs.begin(), h.ineqs.end());
        eqs.insert(eqs.end(), h.eqs.begin(), h.eqs.end());
    };
    add_operand(x);
    for (long j = 0; j < n_samples; ++j) {
        GaussMat zeta = reps::sample_exact_unipotent(rep, rng, 9, 4);
        reps::ProjPoint y = reps::ProjPoint::from_exact(reps::apply_unipotent_exact(rep, zeta, x.ex));
        if (static_cast<int>(y.support.size()) != rep.dim()) full_support_all = false;
        add_operand(y);
        ++out.report.samples_used;
    }
    for (int i = 0; i < rep.rank(); ++i) {  // chamber: fundamental coordinates >= 0
        RatVec n(rep.rank(), Rat(0));
        n[i] = -1;
        ineqs.push_back(poly::HalfSpace{std::move(n), Rat(0)});
    }
    out.rhs = poly::Polytope::from_hrep(rep.rank(), ineqs, eqs);
    out.report.notes.push_back(std::string("freeness proxy (full support at x and translates): ") +
                               (full_support_all ? "holds" : "fails"));

    // LHS: C-set hull
    MainVerification mv = verify_main(rep, x, r_max, 0, seed);
    out.lhs = mv.hulls.empty() ? poly::Polytope::empty(rep.rank()) : mv.final_hull();

    bool contained = true;
    for (const RatVec& v : out.lhs.vertices()) {
        if (!poly::contains(out.rhs, v)) contained = false;
    }
    out.report.add("lhs-in-rhs", contained, contained ? 0 : 1, 0, "exact containment");
    double gap = poly::hausdorff_gap(out.lhs, out.rhs);
    out.report.add("hausdorff-gap", gap < gap_tol, gap, gap_tol);
    return out;
}

// ---------------------------------------------------------------------------
// Action chambers

namespace {

RatVec primitive_normal(RatVec v) {
    Rat off(0);
    // reuse polytope canonicalization: scale to a primitive integer vector
    BigInt den = common_denominator(v);
    BigInt g = 0;
    for (Rat& x : v) {
        x *= Rat(den);
        g = boost::multiprecision::gcd(g, BigInt(boost::multiprecision::numerator(x)));
    }
    if (g != 0) {
        for (Rat& x : v) x /= Rat(g);
    }
    // canonical sign: first nonzero coordinate positive
    for (const Rat& x : v) {
        if (x == 0) continue;
        if (x < 0) {
            for (Rat& y : v) y = -y;
        }
        break;
    }
    (void)off;
    return v;
}

// strict feasibility of {sign_i * <h_i, xi> >= 1}
std::optional<RatVec> chamber_witness(const std::vector<RatVec>& hyperplanes,
                                      const std::vector<int>& signs, int rank) {
    lp::Problem prob;
    prob.nvars = rank;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
        RatVec row = hyperplanes[i];
        if (signs[i] < 0) {
            for (Rat& x : row) x = -x;
        }
        prob.add_ge(std::move(row), Rat(1));
    }
    return lp::feasible_point(prob);
}

}  // namespace

ChamberArrangement action_chambers(const std::vector<lie::Weight>& weights, int rank) {
    if (rank < 1 || rank > 3) throw std::invalid_argument("action_chambers: rank must be 1..3");
    ChamberArrangement arr;
    std::set<RatVec, decltype([](const RatVec& a, const RatVec& b) { return lex_less(a, b); })>
        seen;
    for (const lie::Weight& w : weights) {
        if (static_cast<int>(w.rank()) != rank) {
            throw std::invalid_argument("action_chambers: weight rank mismatch");
        }
        bool zero = std::all_of(w.fw.begin(), w.fw.end(), [](const Rat& c) { return c == 0; });
        if (zero) continue;
        RatVec p = primitive_normal(w.fw);
        if (seen.insert(p).second) arr.hyperplanes.push_back(p);
    }
    if (arr.hyperplanes.size() > 40) {
        throw std::invalid_argument("action_chambers: more than 40 hyperplanes");
    }
    if (arr.hyperplanes.empty()) {
        throw std::invalid_argument("action_chambers: no nonzero hyperplanes");
    }

    // initial witness: a deterministic generic point off all hyperplanes
    RatVec start(rank, Rat(0));
    for (long long attempt = 1;; ++attempt) {
        for (int i = 0; i < rank; ++i) {
            start[i] = Rat(1 + ((attempt * (i + 7) * 2654435761LL) % 9973)) / Rat(64);
        }
        bool generic = true;
        for (const RatVec& h : arr.hyperplanes) {
            if (dot(h, start) == 0) generic = false;
        }
        if (generic) break;
    }
    auto sign_vector = [&](const RatVec& xi) {
        std::vector<int> s;
        for (const RatVec& h : arr.hyperplanes) s.push_back(dot(h, xi) > 0 ? 1 : -1);
        return s;
    };

    // wall-crossing BFS over sign vectors; the chamber graph is connected
    std::set<std::vector<int>> visited;
    std::vector<std::vector<int>> queue;
    {
        std::vector<int> s0 = sign_vector(start);
        auto w0 = chamber_witness(arr.hyperplanes, s0, rank);
        if (!w0) throw std::logic_error("action_chambers: start chamber infeasible");
        visited.insert(s0);
        queue.push_back(s0);
        arr.chambers.push_back(ActionChamber{s0, *w0});
    }
    while (!queue.empty()) {
        std::vector<int> s = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < arr.hyperplanes.size(); ++i) {
            std::vector<int> t = s;
            t[i] = -t[i];
            if (visited.count(t)) continue;
            auto wit = chamber_witness(arr.hyperplanes, t, rank);
            visited.insert(t);  // infeasible sign vectors are remembered too
            if (wit) {
                arr.chambers.push_back(ActionChamber{t, *wit});
                queue.push_back(t);
            }
        }
    }
    std::sort(arr.chambers.begin(), arr.chambers.end(),
              [](const ActionChamber& a, const ActionChamber& b) { return a.signs < b.signs; });
    return arr;
}

std::size_t pick_positive(const lie::RootSystem& rs, const ChamberArrangement& arr) {
    for (std::size_t i = 0; i < arr.chambers.size(); ++i) {
        // strictly dominant witness: every simple root pairs positively
        lp::Problem prob;
        prob.nvars = rs.rank;
        for (std::size_t h = 0; h < arr.hyperplanes.size(); ++h) {
            RatVec row = arr.hyperplanes[h];
            if (arr.chambers[i].signs[h] < 0) {
                for (Rat& x : row) x = -x;
            }
            prob.add_ge(std::move(row), Rat(1));
        }
        for (int r = 0; r < rs.rank; ++r) {
            RatVec row(rs.rank);
            for (int j = 0; j < rs.rank; ++j) row[j] = Rat(rs.cartan[r][j]);
            prob.add_ge(std::move(row), Rat(1));
        }
        if (auto w = lp::feasible_point(prob)) {
            return i;
        }
    }
    throw std::logic_error("pick_positive: no chamber meets the dominant cone interior");
}

// ---------------------------------------------------------------------------
// Unstable manifolds

namespace {

bool projectively_equal(const GaussVec& a, const GaussVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (!(a[i] * b[j] == a[j] * b[i])) return false;
        }
    return true;
}

}  // namespace

VerificationReport unstable_check(const reps::Rep& rep, const RatVec& eta_eps, long samples,
                                  std::uint64_t seed) {
    VerificationReport out;
    out.theorem_id = "unstable-manifolds";
    out.seed = seed;
    out.samples_requested = samples;
    {
        std::ostringstream os;
        os << "sym n=" << rep.n << " d=" << rep.d << " eta=";
        for (const Rat& c : eta_eps) os << format_rat(c) << ",";
        os << " samples=" << samples << " seed=" << seed;
        out.inputs_digest = digest(os.str());
    }
    // eta must be strictly dominant and off every weight-difference hyperplane
    for (int i = 0; i + 1 < rep.n; ++i) {
        if (!(eta_eps[i] > eta_eps[i + 1])) {
            throw std::invalid_argument("unstable_check: eta is not strictly dominant");
        }
    }
    for (int k = 0; k < rep.dim(); ++k)
        for (int l = k + 1; l < rep.dim(); ++l) {
            Rat s = 0;
            for (int i = 0; i < rep.n; ++i) {
                s += Rat(rep.basis[k][i] - rep.basis[l][i]) * eta_eps[i];
            }
            if (s == 0) {
                throw std::invalid_argument("unstable_check: eta lies on an isotropy hyperplane");
            }
        }

    RngStream rng(seed, 5);
    long comp_violations = 0;
    long proj_violations = 0;
    for (long i = 0; i < samples; ++i) {
        reps::ProjPoint y = reps::sample_exact_point(rep, rng, 5);
        reps::LimitResult base = reps::limit_fixed_point(rep, eta_eps, y);
        // full Borel sample: exact unipotent then exact torus
        GaussMat zeta = reps::sample_exact_unipotent(rep, rng, 6, 3);
        GaussVec ny = reps::apply_unipotent_exact(rep, zeta, y.ex);
        GaussVec diag = reps::sample_exact_torus_diag(rep, rng, 7);
        reps::ProjPoint by = reps::ProjPoint::from_exact(reps::apply_diag_exact(rep, diag, ny));
        reps::LimitResult moved = reps::limit_fixed_point(rep, eta_eps, by);
        if (moved.weight_index != base.weight_index) ++comp_violations;
        // Prop 5.1(ii): the limit map itself is invariant under the unipotent part
        reps::ProjPoint nyp = reps::ProjPoint::from_exact(ny);
        reps::LimitResult nmoved = reps::limit_fixed_point(rep, eta_eps, nyp);
        if (nmoved.weight_index != base.weight_index ||
            !projectively_equal(nmoved.limit.ex, base.limit.ex)) {
            ++proj_violations;
        }
        ++out.samples_used;
    }
    out.add("component-invariance", comp_violations == 0, static_cast<double>(comp_violations), 0,
            "limit component under exact Borel samples");
    out.add("projection-invariance", proj_violations == 0, static_cast<double>(proj_violations),
            0, "limit point under exact unipotent samples");
    return out;
}

// ---------------------------------------------------------------------------
// Delzant sequences

DelzantResult delzant_sequence(const lie::RootSystem& rs, const RatVec& lambda,
                               const lie::ChamberFace& sigma, int n_terms) {
    if (static_cast<int>(lambda.size()) != rs.rank) {
        throw std::invalid_argument("delzant_sequence: rank mismatch");
    }
    // lambda must lie in the chamber closure with face exactly sigma
    for (int i = 0; i < rs.rank; ++i) {
        bool vanish =
            std::find(sigma.vanishing.begin(), sigma.vanishing.end(), i) != sigma.vanishing.end();
        if (vanish && lambda[i] != 0) {
            throw std::invalid_argument("delzant_sequence: lambda nonzero on the face");
        }
        if (!vanish && lambda[i] <= 0) {
            throw std::invalid_argument("delzant_sequence: lambda not in the face interior");
        }
    }
    DelzantResult out;
    out.report.theorem_id = "delzant-sequence";
    {
        std::ostringstream os;
        os << rs.name() << " lambda=";
        for (const Rat& c : lambda) os << format_rat(c) << ",";
        os << " terms=" << n_terms;
        out.report.inputs_digest = digest(os.str());
    }

    std::vector<int> free_idx;
    for (int i = 0; i < rs.rank; ++i) {
        if (std::find(sigma.vanishing.begin(), sigma.vanishing.end(), i) == sigma.vanishing.end()) {
            free_idx.push_back(i);
        }
    }

    if (free_idx.empty()) {
        // lambda = 0: every term is the origin
        for (int t = 0; t < n_terms; ++t) {
            out.terms.push_back(
                DelzantTerm{poly::hull(rs.rank, {RatVec(rs.rank, Rat(0))}), BigInt(1)});
        }
    } else {
        // half-width s * 2^-n with dyadic s <= min(1, lambda_min)/2, so the cubes
        // stay in the open face; centers are dyadic roundings fine enough that
        // nesting holds with room to spare
        Rat lmin = lambda[free_idx[0]];
        for (int i : free_idx) lmin = std::min(lmin, lambda[i]);
        int p = 1;
        while (Rat(1) / Rat(BigInt(1) << p) > lmin / 2) ++p;
        for (int t = 1; t <= n_terms; ++t) {
            Rat h = Rat(1) / Rat(BigInt(1) << (p + t));
            BigInt cden = BigInt(1) << (p + t + 4);
            RatVec center(rs.rank, Rat(0));
            for (int i : free_idx) {
                // nearest multiple of 2^-(p+t+4)
                Rat scaled = lambda[i] * Rat(cden);
                BigInt num = boost::multiprecision::numerator(scaled);
                BigInt den = boost::multiprecision::denominator(scaled);
                BigInt q = num / den;  // floor for positive values
                Rat lo = Rat(q) / Rat(cden), hi = Rat(q + 1) / Rat(cden);
                center[i] = (lambda[i] - lo <= hi - lambda[i]) ? lo : hi;
            }
            // vertices: all sign choices on the free coordinates
            std::vector<RatVec> verts;
            std::size_t k = free_idx.size();
            for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
                RatVec v = center;
                for (std::size_t b = 0; b < k; ++b) {
                    v[free_idx[b]] += (mask >> b & 1) ? h : -h;
                }
                verts.push_back(std::move(v));
            }
            poly::Polytope cube = poly::hull(rs.rank, verts);
            RatVec allc;
            for (const RatVec& v : cube.vertices())
                for (const Rat& c : v) allc.push_back(c);
            out.terms.push_back(DelzantTerm{std::move(cube), common_denominator(allc)});
        }
    }

    // requirement checks, all exact
    bool in_face = true, nested = true, shrink = true, contains_lambda = true, regular = true;
    for (int t = 0; t < n_terms; ++t) {
        const poly::Polytope& cube = out.terms[t].delta;
        for (const RatVec& v : cube.vertices()) {
            for (int i = 0; i < rs.rank; ++i) {
                bool vanish = std::find(sigma.vanishing.begin(), sigma.vanishing.end(), i) !=
                              sigma.vanishing.end();
                if (vanish && v[i] != 0) in_face = false;
                if (!vanish && v[i] <= 0) in_face = false;
            }
        }
        if (t + 1 < n_terms) {
            for (const RatVec& v : out.terms[t + 1].delta.vertices()) {
                if (!poly::contains(cube, v)) nested = false;
            }
            if (!free_idx.empty() &&
                !(poly::diameter(out.terms[t + 1].delta) <= 0.5 * poly::diameter(cube) + 1e-15)) {
                shrink = false;
            }
        }
        if (!poly::contains(cube, lambda)) contains_lambda = false;
        if (!free_idx.empty()) {
            std::vector<RatVec> basis;
            for (int i : free_idx) {
                RatVec e(rs.rank, Rat(0));
                e[i] = 1;
                basis.push_back(std::move(e));
            }
            poly::Polytope dilated = poly::dilate(cube, Rat(out.terms[t].dilation));
            if (!poly::is_regular_lattice(dilated, basis)) regular = false;
        }
    }
    out.report.add("in-face", in_face, in_face ? 0 : 1, 0, "Delta_n inside the open face sigma");
    out.report.add("nested", nested, nested ? 0 : 1, 0, "Delta_{n+1} inside Delta_n");
    out.report.add("shrinking-with-lambda", shrink && contains_lambda,
                   (shrink && contains_lambda) ? 0 : 1, 0,
                   "diameters halve and lambda stays inside");
    out.report.add("regular-lattice-dilation", regular, regular ? 0 : 1, 0,
                   "d_n * Delta_n regular w.r.t. Lambda_sigma");
    return out;
}

// ---------------------------------------------------------------------------
// Finiteness survey

SurveyResult finiteness_survey(const reps::Rep& rep, long n_points, int r_max,
                               std::uint64_t seed) {
    SurveyResult out;
    out.points = n_points;
    out.report.theorem_id = "finiteness-survey";
    out.report.seed = seed;
    out.report.samples_requested = n_points;
    {
        std::ostringstream os;
        os << "sym n=" << rep.n << " d=" << rep.d << " points=" << n_points << " rmax=" << r_max
           << " seed=" << seed;
        out.report.inputs_digest = digest(os.str());
    }
    RngStream rng(seed, 6);
    long half = n_points / 2;
    for (long i = 0; i < n_points; ++i) {
        reps::ProjPoint x = reps::sample_exact_point(rep, rng, 9);
        sections::CSet cs = sections::c_set(rep, x, r_max);
        poly::Polytope hull;
        bool empty = cs.members.empty();
        if (empty) {
            hull = poly::Polytope::empty(rep.rank());
        } else {
            std::vector<RatVec> pts;
            for (const auto& m : cs.members) pts.push_back(m.lambda.fw);
            hull = poly::hull(rep.rank(), pts);
        }
        bool found = false;
        for (SurveyEntry& e : out.distinct) {
            if (e.empty_flagged == empty && e.hull == hull) {
                ++e.count;
                found = true;
                break;
            }
        }
        if (!found) out.distinct.push_back(SurveyEntry{std::move(hull), empty, 1});
        if (i + 1 == half) out.distinct_at_half = static_cast<long>(out.distinct.size());
        ++out.report.samples_used;
    }
    for (const SurveyEntry& e : out.distinct) {
        out.most_frequent_count = std::max(out.most_frequent_count, e.count);
    }
    bool stable = out.distinct_at_half == static_cast<long>(out.distinct.size());
    out.report.add("count-stability", stable,
                   static_cast<double>(static_cast<long>(out.distinct.size()) -
                                       out.distinct_at_half),
                   0, "distinct polytopes: half prefix vs full run");
    {
        std::ostringstream os;
        os << "most frequent polytope covers " << out.most_frequent_count << "/" << n_points
           << " points (genericity expectation >= 0.9, not asserted)";
        out.report.notes.push_back(os.str());
    }
    return out;
}

}  // namespace momap::theorems
