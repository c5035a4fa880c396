#include "momap/lie.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace momap::lie {

CartanType cartan_type_from_char(char c) {
    switch (c) {
        case 'A': return CartanType::A;
        case 'B': return CartanType::B;
        case 'C': return CartanType::C;
        case 'D': return CartanType::D;
        case 'E': return CartanType::E;
        case 'F': return CartanType::F;
        case 'G': return CartanType::G;
        default: throw std::invalid_argument(std::string("unknown Cartan type '") + c + "'");
    }
}

bool Weight::is_integral() const {
    for (const Rat& c : fw) {
        if (boost::multiprecision::denominator(c) != 1) return false;
    }
    return true;
}

Weight operator+(const Weight& a, const Weight& b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.fw.size(); ++i) r.fw[i] += b.fw[i];
    return r;
}

Weight operator-(const Weight& a, const Weight& b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.fw.size(); ++i) r.fw[i] -= b.fw[i];
    return r;
}

Weight operator*(const Rat& c, const Weight& w) {
    Weight r = w;
    for (Rat& x : r.fw) x *= c;
    return r;
}

std::string to_string(const Weight& w) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < w.fw.size(); ++i) {
        if (i) os << ',';
        os << format_rat(w.fw[i]);
    }
    os << ')';
    return os.str();
}

std::string RootSystem::name() const {
    return std::string(1, static_cast<char>(type)) + std::to_string(rank);
}

IntMat RootSystem::simple_reflection(int i) const {
    // s_i(lambda)_j = lambda_j - a[i][j] * lambda_i
    IntMat m = IntMat::identity(rank);
    for (int j = 0; j < rank; ++j) m(j, i) -= cartan[i][j];
    return m;
}

namespace {

// Cartan matrices in the convention a_ij = <alpha_i, alpha_j^vee>;
// Bourbaki numbering throughout.
std::vector<std::vector<long long>> cartan_matrix(CartanType type, int rank) {
    auto bad = [&]() -> std::vector<std::vector<long long>> {
        throw std::invalid_argument("invalid (type, rank) pair: " +
                                    std::string(1, static_cast<char>(type)) +
                                    std::to_string(rank));
    };
    if (rank < 1 || rank > 8) bad();
    std::vector<std::vector<long long>> a(rank, std::vector<long long>(rank, 0));
    for (int i = 0; i < rank; ++i) a[i][i] = 2;
    auto chain = [&](int i, int j) {  // simply-laced bond
        a[i][j] = -1;
        a[j][i] = -1;
    };
    switch (type) {
        case CartanType::A:
            for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
            break;
        case CartanType::B:
            // alpha_rank is the short root
            if (rank < 2) bad();
            for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
            a[rank - 2][rank - 1] = -2;
            a[rank - 1][rank - 2] = -1;
            break;
        case CartanType::C:
            // alpha_rank is the long root
            if (rank < 2) bad();
            for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
            a[rank - 2][rank - 1] = -1;
            a[rank - 1][rank - 2] = -2;
            break;
        case CartanType::D:
            if (rank < 3) bad();
            for (int i = 0; i + 2 < rank; ++i) chain(i, i + 1);
            chain(rank - 3, rank - 1);
            break;
        case CartanType::E:
            if (rank < 6) bad();
            // node 1 attaches to node 3 (0-based: 0-2), node 2 to node 4 (1-3)
            chain(0, 2);
            chain(1, 3);
            chain(2, 3);
            for (int i = 3; i + 1 < rank; ++i) chain(i, i + 1);
            break;
        case CartanType::F:
            if (rank != 4) bad();
            chain(0, 1);
            chain(2, 3);
            a[1][2] = -2;
            a[2][1] = -1;
            break;
        case CartanType::G:
            if (rank != 2) bad();
            a[0][1] = -1;
            a[1][0] = -3;
            break;
    }
    return a;
}

}  // namespace

RootSystem build_root_system(CartanType type, int rank) {
    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    rs.cartan = cartan_matrix(type, rank);

    for (int i = 0; i < rank; ++i) {
        RatVec fw(rank);
        for (int j = 0; j < rank; ++j) fw[j] = Rat(rs.cartan[i][j]);
        rs.simple_roots.push_back(Weight(std::move(fw)));
    }

    // Reflection closure of the simple roots within the positive cone.  A root
    // is tracked with its simple-root coordinates so positivity is a sign test.
    std::map<std::vector<long long>, Weight> pos;
    std::deque<std::pair<std::vector<long long>, Weight>> queue;
    for (int i = 0; i < rank; ++i) {
        std::vector<long long> c(rank, 0);
        c[i] = 1;
        pos.emplace(c, rs.simple_roots[i]);
        queue.emplace_back(c, rs.simple_roots[i]);
    }
    while (!queue.empty()) {
        auto [c, w] = queue.front();
        queue.pop_front();
        for (int i = 0; i < rank; ++i) {
            // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
            Rat p = w.pairing(i);
            if (boost::multiprecision::denominator(p) != 1) {
                throw std::logic_error("non-integral root pairing");
            }
            long long k = p.convert_to<long long>();
            std::vector<long long> c2 = c;
            c2[i] -= k;
            bool positive = true;
            for (long long x : c2) {
                if (x < 0) positive = false;
            }
            if (!positive || pos.count(c2)) continue;
            Weight w2 = w - (Rat(k) * rs.simple_roots[i]);
            pos.emplace(c2, w2);
            queue.emplace_back(std::move(c2), std::move(w2));
        }
    }
    for (auto& [c, w] : pos) {
        rs.positive_root_coords.push_back(c);
        rs.positive_roots.push_back(w);
    }
    return rs;
}

RootSystem build_root_system(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("bad root system name: " + name);
    CartanType t = cartan_type_from_char(name[0]);
    int rank = std::stoi(name.substr(1));
    return build_root_system(t, rank);
}

WeylGroup::WeylGroup(const RootSystem& rs, std::size_t cap) : rs_(rs) {
    WeylElement e;
    e.matrix = IntMat::identity(rs.rank);
    e.length = 0;
    elements_.push_back(e);
    index_[e.matrix] = 0;

    std::vector<IntMat> gens;
    for (int i = 0; i < rs.rank; ++i) gens.push_back(rs.simple_reflection(i));

    // BFS layer by layer: the first visit to an element is along a reduced word.
    std::size_t frontier_begin = 0;
    while (frontier_begin < elements_.size()) {
        std::size_t frontier_end = elements_.size();
        for (std::size_t k = frontier_begin; k < frontier_end; ++k) {
            for (int i = 0; i < rs.rank; ++i) {
                IntMat m = elements_[k].matrix * gens[i];
                if (index_.count(m)) continue;
                if (elements_.size() >= cap) {
                    throw std::length_error("Weyl group enumeration exceeds cap");
                }
                WeylElement w;
                w.word = elements_[k].word;
                w.word.push_back(i);
                w.matrix = std::move(m);
                w.length = elements_[k].length + 1;
                index_[w.matrix] = elements_.size();
                elements_.push_back(std::move(w));
            }
        }
        frontier_begin = frontier_end;
    }
}

std::size_t WeylGroup::index_of(const IntMat& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::invalid_argument("matrix is not a Weyl group element");
    return it->second;
}

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
    IntMat m = IntMat::identity(rs_.rank);
    for (int i : word) {
        if (i < 0 || i >= rs_.rank) throw std::invalid_argument("reflection index out of range");
        m = m * rs_.simple_reflection(i);
    }
    return elements_[index_of(m)];
}

std::size_t WeylGroup::multiply_left(int simple, std::size_t elem) const {
    return index_of(rs_.simple_reflection(simple) * elements_[elem].matrix);
}

// Lifting-property recursion on the subword structure of w's reduced word:
// with s the first letter of w,  v <= w  iff  (sv <= sw when sv < v, else v <= sw).
bool WeylGroup::bruhat_leq_idx(std::size_t v, std::size_t w) const {
    const WeylElement& wv = elements_[v];
    const WeylElement& ww = elements_[w];
    if (wv.length > ww.length) return false;
    if (wv.length == 0) return true;
    if (v == w) return true;
    int s = ww.word.front();
    std::size_t sw = multiply_left(s, w);  // = word without its first letter
    std::size_t sv = multiply_left(s, v);
    if (elements_[sv].length < wv.length) return bruhat_leq_idx(sv, sw);
    return bruhat_leq_idx(v, sw);
}

bool WeylGroup::bruhat_leq(const WeylElement& v, const WeylElement& w) const {
    return bruhat_leq_idx(index_of(v), index_of(w));
}

std::vector<WeylElement> WeylGroup::bruhat_interval(const WeylElement& w) const {
    std::vector<WeylElement> out;
    std::size_t wi = index_of(w);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (bruhat_leq_idx(i, wi)) out.push_back(elements_[i]);
    }
    return out;
}

std::vector<WeylElement> weyl_elements(const RootSystem& rs, std::size_t cap) {
    return WeylGroup(rs, cap).elements();
}

Weight weyl_act(const RootSystem& rs, const WeylElement& w, const Weight& lambda) {
    if (static_cast<int>(lambda.rank()) != rs.rank) {
        throw std::invalid_argument("weyl_act: rank mismatch");
    }
    return Weight(w.matrix.apply(lambda.fw));
}

bool bruhat_leq(const RootSystem& rs, const WeylElement& v, const WeylElement& w) {
    return WeylGroup(rs).bruhat_leq(v, w);
}

std::vector<WeylElement> bruhat_interval(const RootSystem& rs, const WeylElement& w) {
    return WeylGroup(rs).bruhat_interval(w);
}

bool ChamberFace::contains(const Weight& w) const {
    for (int i = 0; i < rank; ++i) {
        bool vanish = std::find(vanishing.begin(), vanishing.end(), i) != vanishing.end();
        if (vanish && w.fw[i] != 0) return false;
        if (!vanish && w.fw[i] <= 0) return false;
    }
    return true;
}

bool is_dominant(const RootSystem& rs, const Weight& w) {
    if (static_cast<int>(w.rank()) != rs.rank) throw std::invalid_argument("rank mismatch");
    for (const Rat& c : w.fw) {
        if (c < 0) return false;
    }
    return true;
}

bool is_strictly_dominant(const RootSystem& rs, const Weight& w) {
    if (static_cast<int>(w.rank()) != rs.rank) throw std::invalid_argument("rank mismatch");
    for (const Rat& c : w.fw) {
        if (c <= 0) return false;
    }
    return true;
}

ChamberFace chamber_face(const RootSystem& rs, const Weight& w) {
    if (!is_dominant(rs, w)) {
        throw std::invalid_argument("chamber_face: weight is not dominant");
    }
    ChamberFace f;
    f.rank = rs.rank;
    for (int i = 0; i < rs.rank; ++i) {
        if (w.fw[i] == 0) f.vanishing.push_back(i);
    }
    return f;
}

Weight weyl_vector(const RootSystem& rs) {
    return Weight(RatVec(rs.rank, Rat(1)));
}

}  // namespace momap::lie
