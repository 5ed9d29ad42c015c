#pragma once
// Free modules F_d over the constant Mackey ring for C_n and the maps
// between them.
//
// A map F_b -> F_c is a C_n-map Z[Z/b] -> Z[Z/c]; it is determined by the
// image x of the generator, a vector in Z[Z/c] fixed by t^b.  Such x depend
// only on the index mod g = (b,c), so we store the compact vector
// gr[j] = x_j (j < g).  Writing A for the orbit sum of t^b on the base point,
// x = sum_j gr[j] t^j A.  Span coordinates use the basis t^{-i} A, so
// span[i] = gr[(-i) mod g].

#include "bredon/arith.hpp"
#include "bredon/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bredon {

struct SpanMorphism {
    long src = 1;
    long dst = 1;
    std::vector<long> gr;  // compact group-ring vector, length (src,dst)

    SpanMorphism() : gr(1, 0) {}
    SpanMorphism(long b, long c);  // zero map F_b -> F_c

    static SpanMorphism from_span(long b, long c, const std::vector<long>& span);
    static SpanMorphism from_full(long b, long c, const std::vector<long>& x);

    long width() const { return static_cast<long>(gr.size()); }
    std::vector<long> span() const;
    std::vector<long> full() const;  // length dst vector in Z[Z/dst]
    bool is_zero() const;

    SpanMorphism operator+(const SpanMorphism& o) const;
    SpanMorphism operator-(const SpanMorphism& o) const;
    SpanMorphism operator-() const;
    SpanMorphism scaled(long k) const;
    bool operator==(const SpanMorphism& o) const = default;
};

// The (b,c) span basis maps F_b -> F_c; element i has span vector e_i.
std::vector<SpanMorphism> span_basis(long b, long c, long n);

// g o f for f: F_b -> F_c and g: F_c -> F_d.
SpanMorphism compose(const SpanMorphism& g, const SpanMorphism& f);

long normity(const SpanMorphism& f);

enum class Special { Identity, Rt, RPi, IPi, IPiRPi, Bracket };

// Named maps.  Rt is t acting on F_d (e_0 -> e_1), RPi: F_b -> F_1,
// IPi: F_1 -> F_c, IPiRPi: F_b -> F_c, Bracket uses `m` as span vector.
SpanMorphism special(Special kind, long src, long dst, const std::vector<long>& m = {});

SpanMorphism identity(long d);
SpanMorphism rt_power(long d, long k);  // t^k on F_d
SpanMorphism r_pi(long b);
SpanMorphism i_pi(long c);
SpanMorphism i_pi_r_pi(long b, long c);

// Unit maps are +-t^k on some F_d; returns the inverse when f is one.
std::optional<SpanMorphism> unit_inverse(const SpanMorphism& f);

using FreeModule = std::vector<long>;  // orbit sizes of the summands

// Block matrix of maps: blocks[i][j] : src[j] -> dst[i].
struct BlockMorphism {
    FreeModule src, dst;
    std::vector<std::vector<SpanMorphism>> blocks;

    BlockMorphism() = default;
    BlockMorphism(FreeModule s, FreeModule d);  // zero map
    const SpanMorphism& at(size_t i, size_t j) const { return blocks[i][j]; }
    SpanMorphism& at(size_t i, size_t j) { return blocks[i][j]; }
    bool is_zero() const;
};

BlockMorphism compose(const BlockMorphism& g, const BlockMorphism& f);
BlockMorphism operator+(const BlockMorphism& a, const BlockMorphism& b);
BlockMorphism operator-(const BlockMorphism& a, const BlockMorphism& b);

// Rank of F_d(Theta_e) is (d,e); the basis is the indicator vectors of the
// residue classes mod (d,e) in Z/d.
long level_rank(long d, long e);
long level_rank(const FreeModule& m, long e);

// Matrix of f at level e, acting on column vectors of level coordinates.
SmallMatrix evaluate(const SpanMorphism& f, long e);
SmallMatrix evaluate(const BlockMorphism& f, long e);

// Restriction Theta_{e1} -> Theta_{e2} (e1 | e2), i.e. the inclusion of
// t^{e1}-fixed vectors into t^{e2}-fixed vectors.
SmallMatrix restriction_matrix(const FreeModule& m, long e1, long e2);

// Restriction along the subgroup <t^e> of C_n.  An orbit of size x splits
// into (x,e) orbits of size x/(x,e) for the cyclic group of order n/e.
FreeModule restrict_module(const FreeModule& m, long e);
BlockMorphism restrict_morphism(const BlockMorphism& f, long e);

// Finitely generated abelian group: Z^rank plus invariant factors.
struct AbelianGroup {
    long rank = 0;
    std::vector<Int> torsion;  // t_1 | t_2 | ..., all >= 2

    static AbelianGroup from_invariants(long rank, std::vector<Int> diag);
    bool is_zero() const { return rank == 0 && torsion.empty(); }
    Int torsion_order() const;
    bool operator==(const AbelianGroup& o) const = default;
    std::string str() const;  // "0", "Z", "Z/3", "Z+Z/3", ...
};

using LevelwiseGroup = std::map<long, AbelianGroup>;  // keyed by e | n

std::string str(const LevelwiseGroup& g);

// Named constant-Mackey modules.
struct NamedMackey {
    enum class Kind { Zero, Z, ZmodI, I, Zed, Sum, Unrecognized };
    Kind kind = Kind::Zero;
    long d = 1;  // Z/I_d, I_d, Z(e;d)
    long e = 1;  // Z(e;d)
    std::vector<NamedMackey> parts;
    LevelwiseGroup raw;

    static NamedMackey zero() { return {}; }
    static NamedMackey z() { return {Kind::Z}; }
    static NamedMackey zmod_i(long d);
    static NamedMackey ideal(long d);
    static NamedMackey zed(long e, long d);
    static NamedMackey unrecognized(LevelwiseGroup g);

    // Rewrites equivalent names into one form: Z/I_1 = 0, I_1 = Z,
    // Z(e;d) with primes where d and e agree removed, Z(e;e) = Z, Z(e;1) = I_e.
    NamedMackey canonical() const;
    bool same_as(const NamedMackey& o) const;
    // Values at every e | n.
    LevelwiseGroup levels(long n) const;
    std::string str() const;
};

// Extra data needed to tell apart modules with equal levelwise groups: for
// each level f, the index of the image of restriction from Theta_1 in the
// free part (0 if not applicable) and whether it is onto.
struct RestrictionMeta {
    std::map<long, Int> free_index;
    std::map<long, bool> surjective;
};

NamedMackey recognize(const LevelwiseGroup& g, const RestrictionMeta& meta, long n);

}  // namespace bredon
