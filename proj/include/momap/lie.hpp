// Root systems, Weyl groups, Bruhat order, chamber faces.
//
// Weights are stored in fundamental-weight coordinates, so the pairing
// lambda(alpha_i^vee) is just coordinate i and dominance is a sign check.
// Simple roots are recovered from the Cartan matrix (row i of the matrix is
// alpha_i in fundamental coordinates with the convention
// a_ij = <alpha_i, alpha_j^vee>).

#ifndef MOMAP_LIE_HPP
#define MOMAP_LIE_HPP

#include "momap/linalg.hpp"
#include "momap/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace momap::lie {

enum class CartanType : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

CartanType cartan_type_from_char(char c);

struct Weight {
    RatVec fw;  // fundamental-weight coordinates

    Weight() = default;
    explicit Weight(RatVec coords) : fw(std::move(coords)) {}
    static Weight zero(std::size_t rank) { return Weight(RatVec(rank, Rat(0))); }

    std::size_t rank() const { return fw.size(); }
    // pairing with the i-th simple coroot
    const Rat& pairing(std::size_t i) const { return fw[i]; }
    bool is_integral() const;

    friend Weight operator+(const Weight& a, const Weight& b);
    friend Weight operator-(const Weight& a, const Weight& b);
    friend Weight operator*(const Rat& c, const Weight& w);
    friend bool operator==(const Weight& a, const Weight& b) { return a.fw == b.fw; }
    friend bool operator<(const Weight& a, const Weight& b) { return lex_less(a.fw, b.fw); }
};

std::string to_string(const Weight& w);

struct RootSystem {
    CartanType type;
    int rank;
    std::vector<std::vector<long long>> cartan;  // a[i][j] = <alpha_i, alpha_j^vee>
    std::vector<Weight> simple_roots;            // fundamental coordinates
    std::vector<Weight> positive_roots;
    std::vector<std::vector<long long>> positive_root_coords;  // simple-root basis

    std::string name() const;
    // matrix of the simple reflection s_i on fundamental coordinates
    IntMat simple_reflection(int i) const;
};

// Throws std::invalid_argument on an invalid (type, rank) pair.
RootSystem build_root_system(CartanType type, int rank);
RootSystem build_root_system(const std::string& name);  // "A2", "B3", ...

struct WeylElement {
    std::vector<int> word;  // reduced word, empty for the identity
    IntMat matrix;          // product of simple reflections of `word`
    int length = 0;
};

// The whole group, enumerated once by breadth-first closure.
class WeylGroup {
  public:
    explicit WeylGroup(const RootSystem& rs, std::size_t cap = 1'000'000);

    const RootSystem& root_system() const { return rs_; }
    const std::vector<WeylElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    const WeylElement& identity() const { return elements_[0]; }
    const WeylElement& longest() const { return elements_.back(); }

    // index lookup by matrix; throws if the matrix is not in the group
    std::size_t index_of(const IntMat& m) const;
    std::size_t index_of(const WeylElement& w) const { return index_of(w.matrix); }

    WeylElement from_word(const std::vector<int>& word) const;
    std::size_t multiply_left(int simple, std::size_t elem) const;  // index of s_i * w

    bool bruhat_leq(const WeylElement& v, const WeylElement& w) const;
    std::vector<WeylElement> bruhat_interval(const WeylElement& w) const;

  private:
    RootSystem rs_;
    std::vector<WeylElement> elements_;
    std::map<IntMat, std::size_t> index_;
    bool bruhat_leq_idx(std::size_t v, std::size_t w) const;
};

std::vector<WeylElement> weyl_elements(const RootSystem& rs, std::size_t cap = 1'000'000);

Weight weyl_act(const RootSystem& rs, const WeylElement& w, const Weight& lambda);

bool bruhat_leq(const RootSystem& rs, const WeylElement& v, const WeylElement& w);
std::vector<WeylElement> bruhat_interval(const RootSystem& rs, const WeylElement& w);

struct ChamberFace {
    std::vector<int> vanishing;  // indices i with lambda(alpha_i^vee) = 0
    int rank = 0;

    int span_dimension() const { return rank - static_cast<int>(vanishing.size()); }
    bool contains(const Weight& w) const;
};

bool is_dominant(const RootSystem& rs, const Weight& w);
bool is_strictly_dominant(const RootSystem& rs, const Weight& w);
// Face of the closed dominant chamber containing a dominant weight; throws on
// non-dominant input (the face is a chamber-of-t*_+ notion).
ChamberFace chamber_face(const RootSystem& rs, const Weight& w);

// rho = sum of fundamental weights
Weight weyl_vector(const RootSystem& rs);

}  // namespace momap::lie

#endif  // MOMAP_LIE_HPP
