#pragma once
// Named classes in H^*(pt) and their products.
//
// An element is a homogeneous sum of terms coef * base * monomial, where the
// base is one of 1, u_[c:b], chi_{b,c}^{+-1}, an edge fraction [b]/u_b or an
// Omega fraction Omega/(u_U a_A), and the monomial is a product of a- and
// u-classes.  Pure a/u terms are kept in a canonical form: per prime l the
// l-primary part is a multiple of one preferred monomial.

#include "bredon/cohomology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bredon {

struct Monomial {
    std::map<long, int> a, u;  // index -> exponent (> 0)
    bool empty() const { return a.empty() && u.empty(); }
    bool operator==(const Monomial&) const = default;
    auto operator<=>(const Monomial&) const = default;
};

enum class BaseKind { One, Bracket, Chi, Edge, Omega };

struct Term {
    Int coef = 1;
    BaseKind base = BaseKind::One;
    long x = 0, y = 0;         // Bracket: u_[x:y]; Chi: chi_{x,y} with x < y
    int chi_exp = 1;
    std::vector<long> s1, s2;  // Edge: s1 = b; Omega: s1 = u-part, s2 = a-part
    Monomial mono;

    // Everything except the coefficient.
    bool same_shape(const Term& o) const;
};

struct SymbolicElement {
    enum class Kind { Zero, Unknown, Sum };
    Kind kind = Kind::Zero;
    std::vector<Term> terms;
    std::string reason;              // Unknown only
    std::vector<std::string> rules;  // rules applied while normalizing

    static SymbolicElement zero() { return {}; }
    static SymbolicElement unknown(std::string why);
    static SymbolicElement integer(const Int& k);
    static SymbolicElement a(long d);
    static SymbolicElement u(long d);
    static SymbolicElement bracket(long c, long b);  // u_[c:b]
    static SymbolicElement chi(long b, long c, int exponent = 1);
    static SymbolicElement edge(std::vector<long> b);  // [b]/u_b
    static SymbolicElement omega(std::vector<long> u_part, std::vector<long> a_part);
    static SymbolicElement gamma(long b);  // Omega/(u_b a_b)

    bool is_zero() const { return kind == Kind::Zero; }
    bool is_unknown() const { return kind == Kind::Unknown; }
};

// Same value (ignores the rule trail).
bool operator==(const SymbolicElement& x, const SymbolicElement& y);

class Ring {
public:
    explicit Ring(long n);
    long n() const { return n_; }

    SymbolicElement normalize(const SymbolicElement& e) const;
    SymbolicElement multiply(const SymbolicElement& x, const SymbolicElement& y) const;
    SymbolicElement add(const SymbolicElement& x, const SymbolicElement& y) const;
    SymbolicElement scale(const SymbolicElement& x, const Int& k) const;

    // Throws std::invalid_argument on Unknown.
    GradingDegree degree_of(const SymbolicElement& e) const;
    // Additive order; nullopt for infinite.  Throws on Unknown.
    std::optional<Int> order_of(const SymbolicElement& e) const;

    // Grammar: sums of products of integers, aD, uD (optional ^k), u[C:B],
    // chi(B,C) (optional ^-1), edge(B,...), omega(u:..; a:..), gammaD.
    SymbolicElement parse(const std::string& text) const;

private:
    void check_index(long d) const;
    long n_;
};

std::string to_string(const SymbolicElement& e);
GradingDegree degree_of(const Term& t);

}  // namespace bredon
