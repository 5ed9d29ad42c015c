#pragma once
// Bounded complexes of free modules F_d, the homotopy-class oracle and the
// (M, w) description of chain maps between linear models.

#include "bredon/mackey.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bredon {

// terms[i] sits in homological degree bottom_degree + i and
// diffs[i] : terms[i + 1] -> terms[i].
struct FreeComplex {
    int bottom_degree = 0;
    std::vector<FreeModule> terms;
    std::vector<BlockMorphism> diffs;

    int top_degree() const { return bottom_degree + static_cast<int>(terms.size()) - 1; }
    bool in_range(int p) const { return p >= bottom_degree && p <= top_degree(); }
    FreeModule term(int p) const;  // empty outside the range
    // Differential out of degree p (zero block morphism when absent).
    BlockMorphism diff(int p) const;
    // Throws std::logic_error if some d o d is nonzero.
    void check() const;
};

FreeComplex sphere(long d, long n);
FreeComplex sphere_dual(long d, long n);
// Cellular complex of S^{lambda(k)} with the differential id - R t^A where
// (k, n) = A k + B n.
FreeComplex general_sphere(long k, long n);
FreeComplex box(const FreeComplex& a, const FreeComplex& b);
FreeComplex dual(const FreeComplex& c);
// Box product of the spheres S^{lambda_b} for b in bs (Z when empty).
FreeComplex sphere_product(const std::vector<long>& bs, long n);
// L(b) for the associated divisor string of b.
FreeComplex linear_model(const DivisorTuple& b, long n);
// L(b) for b already a divisor string; no association step.
FreeComplex linear_model_string(const std::vector<long>& b);

// Cancels every +-t^k component of the differentials.  The result is
// homotopy equivalent to the input.
FreeComplex reduce(const FreeComplex& c);
// Restriction to the subgroup <t^e>.
FreeComplex restrict_complex(const FreeComplex& c, long e);

// The same for block maps in the two identity factors: the structure map
// F_b box F_c -> sum over i in Z/(b,c) of F_[b,c], orbit i through e_0 x e_i.
BlockMorphism box_maps(const BlockMorphism& f, const BlockMorphism& g);

struct HomologyDegree {
    LevelwiseGroup levels;
    NamedMackey named;
    RestrictionMeta meta;
    // Cycles generating the Theta_1 group (free generators first, then one
    // per invariant factor), over the level-1 basis of the complex used.
    std::vector<std::vector<Int>> generators;
};

struct HomologyOptions {
    bool reduce_first = true;
    bool generators = false;
};

// Homology at every level e | n, with Mackey recognition.
std::map<int, HomologyDegree> homology(const FreeComplex& c, long n, HomologyOptions opts = {});
AbelianGroup homology_at(const FreeComplex& c, int p, long e);

// A map of complexes K -> L raising degree by `shift`: comps[i] is the
// component out of K's degree bottom + i.
struct ChainMap {
    FreeComplex src, dst;
    int shift = 0;
    std::vector<BlockMorphism> comps;
    BlockMorphism at(int p) const;  // component out of src degree p
};

bool is_chain_map(const ChainMap& f);

// Hom(K, L) over the span category; Hom_p = prod_q Hom(K_q, L_{q+p}) with
// D f = d_L f - (-1)^p f d_K.
class HomComplex {
public:
    HomComplex(FreeComplex k, FreeComplex l);

    int min_degree() const { return lo_; }
    int max_degree() const { return hi_; }
    size_t rank(int p) const;
    // D : Hom_p -> Hom_{p-1}.
    SmallMatrix differential(int p) const;
    AbelianGroup homology(int p) const;
    std::vector<Int> vectorize(const ChainMap& f) const;
    ChainMap devectorize(int p, const std::vector<Int>& v) const;
    // Whether the Hom_p element v is a boundary.
    bool is_boundary(int p, const std::vector<Int>& v) const;

private:
    struct Block {
        int q;       // source degree in K
        size_t i, j; // target summand in L_{q+p}, source summand in K_q
        size_t offset;
        long width;
    };
    std::vector<Block> const& blocks(int p) const;
    size_t find_block(int p, int q, size_t i, size_t j) const;

    FreeComplex k_, l_;
    int lo_ = 0, hi_ = -1;
    std::map<int, std::vector<Block>> blocks_;
    std::map<int, size_t> rank_;
};

enum class HomMethod { ClosedForm, PhiImage, Oracle };
std::string to_string(HomMethod m);

// Chain map data between L(c) and L(d) for divisor strings of equal length.
struct ChainMapData {
    std::vector<long> c, d;
    std::vector<long> M;  // M_1..M_k
    std::vector<long> w;  // w_1..w_k
    long w0() const;
    // Throws std::invalid_argument naming the first violated relation.
    void validate() const;
};

struct HomotopyGroupResult {
    AbelianGroup group;
    std::vector<ChainMapData> generators;
    std::vector<std::vector<Int>> raw_generators;
    HomMethod method = HomMethod::Oracle;
};

// [K, Sigma^m L] at Theta_1.
HomotopyGroupResult hom_group(const FreeComplex& k, const FreeComplex& l, int m, bool with_generators = false);

ChainMap chain_map_from_data(const ChainMapData& data);
bool is_null_homotopic(const ChainMapData& data);
// Oracle version: decides membership in the boundaries of Hom(L(c), L(d)).
bool is_null_homotopic_oracle(const ChainMapData& data);
// Integer by which the map acts on H_{2i} at Theta_1, up to sign.
Int homology_action(const ChainMapData& data, int i);
// Basis of the lattice of valid (M_1..M_k, w_1..w_k) vectors.
std::vector<std::vector<long>> chain_map_lattice(const std::vector<long>& c, const std::vector<long>& d);
HomotopyGroupResult phi_image(const DivisorTuple& c, const DivisorTuple& d);

}  // namespace bredon
