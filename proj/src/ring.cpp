#include "bredon/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bredon {

namespace {

long lcm_list(const std::vector<long>& xs)
{
    long l = 1;
    for (long x : xs) l = std::lcm(l, x);
    return l;
}

int valuation(long x, long ell)
{
    int v = 0;
    for (; x % ell == 0; x /= ell) ++v;
    return v;
}

void erase_one(std::vector<long>& xs, long x)
{
    xs.erase(std::find(xs.begin(), xs.end(), x));
}

bool contains(const std::vector<long>& xs, long x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

void bump(std::map<long, int>& m, long d, int k)
{
    if ((m[d] += k) == 0) m.erase(d);
}

bool take(std::map<long, int>& m, long d)
{
    auto it = m.find(d);
    if (it == m.end()) return false;
    if (--it->second == 0) m.erase(it);
    return true;
}

bool is_string(const std::vector<long>& xs)
{
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i + 1] % xs[i] != 0) return false;
    return true;
}

Int mod(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Int inverse_mod(const Int& a, const Int& m)
{
    Int r;
    if (m == 1) return 0;
    if (!mpz_invert(r.get_mpz_t(), Int(mod(a, m)).get_mpz_t(), m.get_mpz_t()))
        throw std::logic_error("inverse_mod: not invertible");
    return r;
}

// ---- canonical form of pure a/u terms

struct AUFrame {
    std::vector<long> indices;  // all indices with multiplicity, sorted
    int r = 0;                  // number of u-classes
    Int N = 0;                  // order of the group at Theta_1 (0 = free)
    std::map<long, Int> part;   // prime -> N(l)
    std::map<long, std::vector<long>> canonical_u;
};

AUFrame frame_of(const Monomial& m)
{
    AUFrame f;
    for (auto [d, k] : m.a)
        for (int i = 0; i < k; ++i) f.indices.push_back(d);
    for (auto [d, k] : m.u)
        for (int i = 0; i < k; ++i) {
            f.indices.push_back(d);
            ++f.r;
        }
    std::sort(f.indices.begin(), f.indices.end());
    if (m.a.empty()) return f;
    f.N = lcm_gcd_seq(to_big(f.indices))[f.r];
    for (long ell : prime_factors(to_long(f.N))) {
        Int p = 1;
        for (Int x = f.N; x % ell == 0; x /= ell) p *= ell;
        f.part[ell] = p;
        auto sorted = f.indices;
        std::stable_sort(sorted.begin(), sorted.end(), [ell](long a, long b) {
            return std::pair(valuation(a, ell), a) < std::pair(valuation(b, ell), b);
        });
        f.canonical_u[ell].assign(sorted.begin(), sorted.begin() + f.r);
    }
    return f;
}

// l-coordinate of the monomial whose u-classes are `us`, relative to the
// canonical monomial of the frame.  Swapping a_b u_c for a_c u_b multiplies by
// the l-local unit-times-ratio c/b, so the total factor telescopes.
Int coordinate(const AUFrame& f, long ell, const std::vector<long>& us)
{
    Int p = 1, s = 1;
    for (long x : us) p *= x;
    for (long x : f.canonical_u.at(ell)) s *= x;
    Int g = gcd(p, s);
    p /= g;
    s /= g;
    const Int& m = f.part.at(ell);
    return mod(p * inverse_mod(s, m), m);
}

std::vector<long> u_list(const Monomial& m)
{
    std::vector<long> out;
    for (auto [d, k] : m.u)
        for (int i = 0; i < k; ++i) out.push_back(d);
    return out;
}

Monomial monomial_from(const AUFrame& f, const std::vector<long>& us)
{
    Monomial m;
    auto rest = f.indices;
    for (long x : us) {
        bump(m.u, x, 1);
        erase_one(rest, x);
    }
    for (long x : rest) bump(m.a, x, 1);
    return m;
}

// Smallest nonnegative C with C = r_i mod m_i (pairwise coprime moduli).
Int crt(const std::vector<std::pair<Int, Int>>& congruences)
{
    Int x = 0, M = 1;
    for (auto [r, m] : congruences) {
        if (m == 1) continue;
        // x + M t = r (mod m)
        Int t = mod((r - x) * inverse_mod(M, m), m);
        x += M * t;
        M *= m;
    }
    return mod(x, M);
}

std::vector<Term> normalize_au(const std::vector<Term>& terms, std::vector<std::string>& rules)
{
    if (terms.empty()) return {};
    const auto f = frame_of(terms.front().mono);
    if (f.N == 0) {
        Term t = terms.front();
        t.coef = 0;
        for (const auto& s : terms) t.coef += s.coef;
        if (t.coef == 0) return {};
        return {t};
    }
    if (f.N == 1) {
        rules.push_back("Euler relation: a-classes are killed");
        return {};
    }
    std::map<long, Int> x;
    for (const auto& [ell, p] : f.part) {
        x[ell] = 0;
        for (const auto& t : terms) x[ell] = mod(x[ell] + t.coef * coordinate(f, ell, u_list(t.mono)), p);
    }
    if (terms.size() > 1 || u_list(terms.front().mono) != f.canonical_u.begin()->second)
        rules.push_back("gold relation: rewrite onto canonical monomials");
    std::map<std::vector<long>, std::vector<long>> groups;  // canonical u-list -> primes
    for (const auto& [ell, us] : f.canonical_u) groups[us].push_back(ell);
    std::vector<Term> out;
    for (const auto& [us, primes] : groups) {
        std::vector<std::pair<Int, Int>> cong;
        for (const auto& [ell, p] : f.part) {
            if (contains(primes, ell)) {
                cong.emplace_back(x[ell], p);
            } else {
                Int c = coordinate(f, ell, us);
                cong.emplace_back(0, p / gcd(c, p));
            }
        }
        Int C = crt(cong);
        if (C == 0) continue;
        Term t;
        t.coef = C;
        t.mono = monomial_from(f, us);
        out.push_back(t);
    }
    return out;
}

Int au_order(const Term& t)
{
    const auto f = frame_of(t.mono);
    if (f.N == 0) return 0;
    Int ord = 1;
    for (const auto& [ell, p] : f.part) ord *= p / gcd(coordinate(f, ell, u_list(t.mono)), p);
    return ord / gcd(mod(t.coef, ord), ord);
}

// ---- printing

std::string join(const std::vector<long>& xs)
{
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

std::string base_str(const Term& t)
{
    switch (t.base) {
    case BaseKind::One: return "";
    case BaseKind::Bracket: return "u[" + std::to_string(t.x) + ":" + std::to_string(t.y) + "]";
    case BaseKind::Chi: return "chi(" + std::to_string(t.x) + "," + std::to_string(t.y) + ")" + (t.chi_exp < 0 ? "^-1" : "");
    case BaseKind::Edge: return "edge(" + join(t.s1) + ")";
    case BaseKind::Omega:
        if (t.s1.size() == 1 && t.s1 == t.s2) return "gamma" + std::to_string(t.s1[0]);
        return "omega(u:" + join(t.s1) + "; a:" + join(t.s2) + ")";
    }
    return "";
}

std::string term_str(const Term& t, bool absolute)
{
    std::vector<std::string> parts;
    auto b = base_str(t);
    if (!b.empty()) parts.push_back(b);
    for (auto [d, k] : t.mono.a) parts.push_back("a" + std::to_string(d) + (k > 1 ? "^" + std::to_string(k) : ""));
    for (auto [d, k] : t.mono.u) parts.push_back("u" + std::to_string(d) + (k > 1 ? "^" + std::to_string(k) : ""));
    Int c = absolute ? Int(abs(t.coef)) : t.coef;
    std::string s;
    if (parts.empty()) return c.get_str();
    if (c == -1)
        s = "-";
    else if (c != 1)
        s = c.get_str() + "*";
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
    return s;
}

}  // namespace

// ---------------------------------------------------------------- terms

bool Term::same_shape(const Term& o) const
{
    return base == o.base && x == o.x && y == o.y && chi_exp == o.chi_exp && s1 == o.s1 && s2 == o.s2 && mono == o.mono;
}

namespace {

auto term_key(const Term& t) { return std::tie(t.base, t.x, t.y, t.chi_exp, t.s1, t.s2, t.mono); }

}  // namespace

GradingDegree degree_of(const Term& t)
{
    std::map<long, int> mult;
    int m = 0;
    switch (t.base) {
    case BaseKind::One: break;
    case BaseKind::Bracket:
        mult[t.x] += 1;
        mult[t.y] -= 1;
        break;
    case BaseKind::Chi: {
        const int e = t.chi_exp;
        mult[std::gcd(t.x, t.y)] += e;
        mult[std::lcm(t.x, t.y)] += e;
        mult[t.x] -= e;
        mult[t.y] -= e;
        break;
    }
    case BaseKind::Edge:
        m += 2 * static_cast<int>(t.s1.size());
        for (long b : t.s1) mult[b] -= 1;
        break;
    case BaseKind::Omega:
        m += 1 + 2 * static_cast<int>(t.s1.size());
        for (long b : t.s1) mult[b] -= 1;
        for (long b : t.s2) mult[b] -= 1;
        break;
    }
    for (auto [d, k] : t.mono.a) mult[d] += k;
    for (auto [d, k] : t.mono.u) {
        mult[d] += k;
        m -= 2 * k;
    }
    return GradingDegree::make(m, mult);
}

SymbolicElement SymbolicElement::unknown(std::string why)
{
    SymbolicElement e;
    e.kind = Kind::Unknown;
    e.reason = std::move(why);
    return e;
}

namespace {

SymbolicElement single(Term t)
{
    SymbolicElement e;
    e.kind = SymbolicElement::Kind::Sum;
    e.terms.push_back(std::move(t));
    return e;
}

}  // namespace

SymbolicElement SymbolicElement::integer(const Int& k)
{
    if (k == 0) return zero();
    Term t;
    t.coef = k;
    return single(t);
}

SymbolicElement SymbolicElement::a(long d)
{
    Term t;
    t.mono.a[d] = 1;
    return single(t);
}

SymbolicElement SymbolicElement::u(long d)
{
    Term t;
    t.mono.u[d] = 1;
    return single(t);
}

SymbolicElement SymbolicElement::bracket(long c, long b)
{
    Term t;
    t.base = BaseKind::Bracket;
    t.x = c;
    t.y = b;
    return single(t);
}

SymbolicElement SymbolicElement::chi(long b, long c, int exponent)
{
    Term t;
    t.base = BaseKind::Chi;
    t.x = std::min(b, c);
    t.y = std::max(b, c);
    t.chi_exp = exponent < 0 ? -1 : 1;
    return single(t);
}

SymbolicElement SymbolicElement::edge(std::vector<long> b)
{
    Term t;
    t.base = BaseKind::Edge;
    std::sort(b.begin(), b.end());
    t.s1 = std::move(b);
    return single(t);
}

SymbolicElement SymbolicElement::omega(std::vector<long> u_part, std::vector<long> a_part)
{
    std::sort(u_part.begin(), u_part.end());
    std::sort(a_part.begin(), a_part.end());
    auto all = u_part;
    all.insert(all.end(), a_part.begin(), a_part.end());
    if (u_part.empty() || a_part.empty())
        throw std::invalid_argument("invalid Omega fraction: the denominator needs at least one u-class and one a-class");
    if (!is_string(all))
        throw std::invalid_argument("invalid Omega fraction: u:" + join(u_part) + " followed by a:" + join(a_part) +
                                    " is not a divisor string");
    Term t;
    t.base = BaseKind::Omega;
    t.s1 = std::move(u_part);
    t.s2 = std::move(a_part);
    return single(t);
}

SymbolicElement SymbolicElement::gamma(long b) { return omega({b}, {b}); }

bool operator==(const SymbolicElement& x, const SymbolicElement& y)
{
    if (x.kind != y.kind) return false;
    if (x.kind == SymbolicElement::Kind::Unknown) return x.reason == y.reason;
    if (x.terms.size() != y.terms.size()) return false;
    for (size_t i = 0; i < x.terms.size(); ++i)
        if (!x.terms[i].same_shape(y.terms[i]) || x.terms[i].coef != y.terms[i].coef) return false;
    return true;
}

std::string to_string(const SymbolicElement& e)
{
    switch (e.kind) {
    case SymbolicElement::Kind::Zero: return "0";
    case SymbolicElement::Kind::Unknown: return "UNKNOWN(" + e.reason + ")";
    case SymbolicElement::Kind::Sum: break;
    }
    std::string s;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        const auto& t = e.terms[i];
        if (i == 0)
            s += term_str(t, false);
        else
            s += (t.coef < 0 ? " - " : " + ") + term_str(t, true);
    }
    return s;
}

// ---------------------------------------------------------------- the ring

Ring::Ring(long n) : n_(n)
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
}

void Ring::check_index(long d) const
{
    if (d < 1 || n_ % d != 0) throw std::invalid_argument("index " + std::to_string(d) + " does not divide n = " + std::to_string(n_));
}

namespace {

struct Ctx {
    long n;
    std::vector<std::string>* rules;
    void note(const std::string& r) const
    {
        if (std::find(rules->begin(), rules->end(), r) == rules->end()) rules->push_back(r);
    }
};

// Zero from the closed forms alone (no oracle work).
bool cheap_vanishes(long n, const GradingDegree& deg)
{
    switch (classify(deg)) {
    case Region::Zero: return true;
    case Region::PositiveCone: return positive_group(n, to_big(deg.positive()), -deg.m).at(1).is_zero();
    case Region::NegativeConeTorsion:
    case Region::IntegralEdge: return negative_group(n, to_big(deg.negative()), deg.m).at(1).is_zero();
    case Region::Irregular: return false;
    }
    return false;
}

bool vanishes(long n, const GradingDegree& deg)
{
    if (cheap_vanishes(n, deg)) return true;
    if (classify(deg) != Region::Irregular) return false;
    return group(n, deg).at(1).is_zero();
}

SymbolicElement open_case(const Ctx& ctx, const GradingDegree& deg, const std::string& why)
{
    if (vanishes(ctx.n, deg)) {
        ctx.note("target group vanishes");
        return SymbolicElement::zero();
    }
    return SymbolicElement::unknown(why);
}

// Canonical base and monomial hygiene for one term.
SymbolicElement tidy(Term t, const Ctx& ctx)
{
    if (t.coef == 0) return SymbolicElement::zero();
    if (t.mono.a.count(1)) {
        ctx.note("a_1 = 0");
        return SymbolicElement::zero();
    }
    t.mono.u.erase(1);
    switch (t.base) {
    case BaseKind::Bracket:
        if (t.x == t.y) {
            t.base = BaseKind::One;
        } else if (t.y == 1) {
            t.base = BaseKind::One;
            bump(t.mono.u, t.x, 1);
        } else if (t.x == 1) {
            t.base = BaseKind::Edge;
            t.s1 = {t.y};
            t.x = t.y = 0;
        }
        break;
    case BaseKind::Chi:
        if (t.y % t.x == 0) {
            ctx.note("chi of a dividing pair is 1");
            t.base = BaseKind::One;
        }
        break;
    case BaseKind::Edge:
        std::erase(t.s1, 1L);
        std::sort(t.s1.begin(), t.s1.end());
        if (t.s1.empty()) t.base = BaseKind::One;
        break;
    default: break;
    }
    if (t.base == BaseKind::One) t.x = t.y = 0, t.chi_exp = 1, t.s1.clear(), t.s2.clear();
    if (t.base != BaseKind::Chi) t.chi_exp = 1;
    return single(t);
}

// Moves a- and u-factors of the monomial into the base where a rule allows.
SymbolicElement absorb(Term t, const Ctx& ctx)
{
    for (;;) {
        auto tidied = tidy(t, ctx);
        if (tidied.is_zero()) return tidied;
        t = tidied.terms.front();
        if (t.mono.empty() || t.base == BaseKind::One) return single(t);
        bool moved = false;
        switch (t.base) {
        case BaseKind::One: break;
        case BaseKind::Bracket: {
            const long c = t.x, b = t.y, g = std::gcd(b, c);
            if (take(t.mono.a, b)) {
                ctx.note("u_[c:b] a_b = (c/(b,c)) a_c");
                t.coef *= c / g;
                bump(t.mono.a, c, 1);
                t.base = BaseKind::One;
                moved = true;
            } else if (take(t.mono.u, b)) {
                ctx.note("u_[c:b] u_b = (b/(b,c)) u_c");
                t.coef *= b / g;
                bump(t.mono.u, c, 1);
                t.base = BaseKind::One;
                moved = true;
            }
            break;
        }
        case BaseKind::Chi: {
            const long b = t.x, c = t.y, g = std::gcd(b, c), l = std::lcm(b, c);
            auto& A = t.mono.a;
            auto& U = t.mono.u;
            auto has = [](const std::map<long, int>& m, long d) { return m.count(d) > 0; };
            if (t.chi_exp > 0) {
                if (has(U, b) && has(U, c)) {
                    ctx.note("chi u_b u_c = u_(b,c) u_[b,c]");
                    take(U, b), take(U, c), bump(U, g, 1), bump(U, l, 1);
                    moved = true;
                } else if (has(A, b) && has(A, c)) {
                    ctx.note("chi a_b a_c = a_[b,c] a_(b,c)");
                    take(A, b), take(A, c), bump(A, g, 1), bump(A, l, 1);
                    moved = true;
                } else if (has(A, b) && has(U, c)) {
                    ctx.note("chi a_b u_c = (c/(b,c)) a_[b,c] u_(b,c)");
                    take(A, b), take(U, c), bump(A, l, 1), bump(U, g, 1);
                    t.coef *= c / g;
                    moved = true;
                } else if (has(A, c) && has(U, b)) {
                    ctx.note("chi a_b u_c = (c/(b,c)) a_[b,c] u_(b,c)");
                    take(A, c), take(U, b), bump(A, l, 1), bump(U, g, 1);
                    t.coef *= b / g;
                    moved = true;
                }
            } else {
                if ((g == 1 || has(U, g)) && has(U, l)) {
                    ctx.note("chi^-1 u_(b,c) u_[b,c] = u_b u_c");
                    if (g != 1) take(U, g);
                    take(U, l), bump(U, b, 1), bump(U, c, 1);
                    moved = true;
                } else if (g != 1 && has(A, g) && has(A, l)) {
                    ctx.note("chi^-1 a_(b,c) a_[b,c] = a_b a_c");
                    take(A, g), take(A, l), bump(A, b, 1), bump(A, c, 1);
                    moved = true;
                }
            }
            if (moved) t.base = BaseKind::One;
            break;
        }
        case BaseKind::Edge: {
            for (auto [d, k] : t.mono.a)
                if (lcm_list(t.s1) % d == 0) {
                    ctx.note("a_c kills [b]/u_b when c | [b]");
                    return SymbolicElement::zero();
                }
            if (t.s1.size() == 1 && !t.mono.u.empty()) {
                // u_d [b]/u_b = (b,d) u_[d:b]
                const long b = t.s1.front(), d = t.mono.u.begin()->first;
                ctx.note("u_d [b]/u_b = (b,d) u_[d:b]");
                take(t.mono.u, d);
                t.coef *= std::gcd(b, d);
                t.base = BaseKind::Bracket;
                t.x = d;
                t.y = b;
                t.s1.clear();
                continue;
            }
            for (auto [d, k] : t.mono.u)
                if (contains(t.s1, d)) {
                    ctx.note("u_bi [b]/u_b = ([b]/[b minus bi]) [b minus bi]/u_(b minus bi)");
                    const long before = lcm_list(t.s1);
                    erase_one(t.s1, d);
                    t.coef *= before / lcm_list(t.s1);
                    take(t.mono.u, d);
                    moved = true;
                    break;
                }
            break;
        }
        case BaseKind::Omega: {
            auto& U = t.s1;
            auto& A = t.s2;
            for (auto [c, k] : t.mono.a) {
                if (contains(A, c)) {
                    take(t.mono.a, c);
                    if (A.size() == 1) {
                        ctx.note("a-multiplication leaves the torsion cone");
                        return SymbolicElement::zero();
                    }
                    ctx.note("a_c cancels against the denominator");
                    erase_one(A, c);
                    moved = true;
                    break;
                }
                if (c == U.back()) {
                    take(t.mono.a, c);
                    const long d = A.front();
                    ctx.note("inverse gold relation 2");
                    t.coef *= d / c;
                    erase_one(U, c);
                    erase_one(A, d);
                    U.push_back(d);
                    std::sort(U.begin(), U.end());
                    if (A.empty()) return SymbolicElement::zero();
                    moved = true;
                    break;
                }
            }
            if (moved) break;
            for (auto [c, k] : t.mono.u) {
                const long top = U.back();
                const bool repeated = std::count(U.begin(), U.end(), c) > 1;
                if (contains(U, c) && (c != top || repeated)) {
                    take(t.mono.u, c);
                    ctx.note("u_c cancels against the denominator");
                    erase_one(U, c);
                    moved = true;
                    break;
                }
                if (c == A.front()) {
                    take(t.mono.u, c);
                    ctx.note("inverse gold relation 1");
                    t.coef *= c / top;
                    U.pop_back();
                    erase_one(A, c);
                    A.push_back(top);
                    std::sort(A.begin(), A.end());
                    if (U.empty()) return SymbolicElement::zero();
                    moved = true;
                    break;
                }
            }
            if (moved) {
                t.coef = mod(t.coef, U.back());
                if (t.coef == 0) return SymbolicElement::zero();
            }
            break;
        }
        }
        if (moved) continue;
        // Nothing more applies.  Bracket and chi classes may carry a formal
        // monomial; for the torsion and edge classes the product is open.
        if (t.base == BaseKind::Bracket || t.base == BaseKind::Chi) {
            if (vanishes(ctx.n, degree_of(t))) {
                ctx.note("target group vanishes");
                return SymbolicElement::zero();
            }
            return single(t);
        }
        return open_case(ctx, degree_of(t), t.base == BaseKind::Omega ? "u- or a-class outside the denominator string of a torsion generator"
                                                                       : "product leaves the region described for edge classes");
    }
}

Int bracket_factor(long b, long c, long d)
{
    // u_[d:c] u_[c:b] = K u_[d:b]
    const long bcd = std::lcm(std::lcm(b, c), d), bd = std::lcm(b, d);
    const long gbd = std::gcd(b, d), gbcd = std::gcd(std::gcd(b, c), d);
    return Int(bcd / bd) * (gbd / gbcd);
}

// Product of two bases (monomials are merged by the caller).
SymbolicElement combine_bases(Term s, Term t, const Ctx& ctx)
{
    if (term_key(t) < term_key(s)) std::swap(s, t);
    if (static_cast<int>(s.base) > static_cast<int>(t.base)) std::swap(s, t);
    Term out;
    out.coef = s.coef * t.coef;
    for (auto [d, k] : s.mono.a) bump(out.mono.a, d, k);
    for (auto [d, k] : t.mono.a) bump(out.mono.a, d, k);
    for (auto [d, k] : s.mono.u) bump(out.mono.u, d, k);
    for (auto [d, k] : t.mono.u) bump(out.mono.u, d, k);

    auto with_base = [&](const Term& b) {
        Term r = out;
        r.base = b.base;
        r.x = b.x;
        r.y = b.y;
        r.chi_exp = b.chi_exp;
        r.s1 = b.s1;
        r.s2 = b.s2;
        return r;
    };
    auto open = [&](const std::string& why) {
        auto deg = degree_of(with_base(s)) + degree_of(with_base(t)) - degree_of(out);
        return open_case(ctx, deg, why);
    };

    if (s.base == BaseKind::One) return single(with_base(t));
    // A single edge fraction [c]/u_c is the bracket u_[1:c].
    if (s.base == BaseKind::Bracket && t.base == BaseKind::Edge && t.s1.size() == 1) {
        t.base = BaseKind::Bracket;
        t.x = 1;
        t.y = t.s1.front();
        t.s1.clear();
    }

    if (s.base == BaseKind::Bracket && t.base == BaseKind::Bracket) {
        Term r = out;
        if (s.y == t.x || t.y == s.x) {
            const Term& first = s.y == t.x ? s : t;   // u_[d:c]
            const Term& second = s.y == t.x ? t : s;  // u_[c:b]
            const long d = first.x, c = first.y, b = second.y;
            ctx.note("u_[d:c] u_[c:b] = ([b,c,d]/[b,d]) ((b,d)/(b,c,d)) u_[d:b]");
            r.coef *= bracket_factor(b, c, d);
            r.base = BaseKind::Bracket;
            r.x = d;
            r.y = b;
            return single(r);
        }
        return open("no rule for this product of u_[c:b] classes");
    }
    if (s.base == BaseKind::Chi && t.base == BaseKind::Chi) {
        if (s.x == t.x && s.y == t.y && s.chi_exp != t.chi_exp) {
            ctx.note("chi is a unit");
            return single(out);
        }
        return open("no rule for this product of chi classes");
    }
    if (s.base == BaseKind::Edge && t.base == BaseKind::Edge) {
        ctx.note("edge classes multiply by [b][c]/[b,c]");
        Term r = out;
        r.base = BaseKind::Edge;
        r.s1 = s.s1;
        r.s1.insert(r.s1.end(), t.s1.begin(), t.s1.end());
        std::sort(r.s1.begin(), r.s1.end());
        r.coef *= Int(lcm_list(s.s1)) * lcm_list(t.s1) / lcm_list(r.s1);
        return single(r);
    }
    if (s.base == BaseKind::Omega && t.base == BaseKind::Omega) {
        ctx.note("product of two torsion generators is zero");
        return SymbolicElement::zero();
    }
    if (s.base == BaseKind::Edge && t.base == BaseKind::Omega) {
        const auto& d = s.s1;
        const long bs = t.s1.back();
        auto merged = d;
        merged.insert(merged.end(), t.s1.begin(), t.s1.end());
        std::sort(merged.begin(), merged.end());
        if (is_string(merged) && merged.back() == bs) {
            ctx.note("edge times torsion generator: interlacing case");
            Term r = out;
            r.base = BaseKind::Omega;
            r.s1 = merged;
            r.s2 = t.s2;
            r.coef *= lcm_list(d);
            r.coef = mod(r.coef, bs);
            if (r.coef == 0) return SymbolicElement::zero();
            return single(r);
        }
        if (lcm_list(d) % bs == 0) {
            ctx.note("edge times torsion generator: b_s divides [d]");
            return SymbolicElement::zero();
        }
        return open("edge class times torsion generator outside the known cases");
    }
    if (s.base == BaseKind::Bracket && t.base == BaseKind::Omega) {
        const long p = s.x, q = s.y;  // u_[p:q]
        const auto& U = t.s1;
        const auto& A = t.s2;
        Term r = out;
        r.base = BaseKind::Omega;
        auto set = [&](std::vector<long> u, std::vector<long> a, long k, const std::string& why) {
            ctx.note(why);
            r.s1 = std::move(u);
            r.s2 = std::move(a);
            r.coef *= k;
            r.coef = mod(r.coef, r.s1.back());
            return r.coef == 0 ? SymbolicElement::zero() : single(r);
        };
        if (U.size() == 1 && A.size() == 1) {
            const long x = U[0], y = A[0];
            if (x == y && q % p == 0 && p == x) return set({x}, {q}, 1, "u_[b:c] gamma_b = a_b gamma_b / a_c");
            if (x == y && p % q == 0 && p == x) return set({q}, {p}, 1, "u_[c:b] gamma_c = a_b gamma_b / a_c");
            if (x != y && p == y && q == x) return set({x}, {x}, y / x, "u_[c:b] a_b gamma_b / a_c = (c/b) gamma_b");
            if (x != y && p == x && q == y) return set({y}, {y}, y / x, "u_[b:c] a_b gamma_b / a_c = (c/b) gamma_c");
            // u_[d:b] a_c gamma_c / a_d with b | c | d
            if (x != y && p == y && x % q == 0 && q != x) return set({q}, {x}, y / x, "u_[d:b] a_c gamma_c / a_d = (d/c) a_b gamma_b / a_c");
        }
        // u_[b:c] gamma_d / u_b with b | c | d
        if (U.size() == 2 && A.size() == 1 && U[1] == A[0] && U[0] == p && q % p == 0 && A[0] % q == 0 && q != p)
            return set({q, A[0]}, {A[0]}, q / p, "u_[b:c] gamma_d / u_b = (c/b) gamma_d / u_c");
        return open("u_[c:b] times torsion generator outside the known cases");
    }
    return open("no rule for this pair of classes");
}

}  // namespace

SymbolicElement Ring::normalize(const SymbolicElement& e) const
{
    if (e.kind != SymbolicElement::Kind::Sum) return e;
    SymbolicElement out;
    out.rules = e.rules;
    Ctx ctx{n_, &out.rules};
    std::vector<Term> pending;
    std::optional<GradingDegree> deg;
    for (const auto& t : e.terms) {
        check_index(t.x == 0 ? 1 : t.x);
        check_index(t.y == 0 ? 1 : t.y);
        for (long d : t.s1) check_index(d);
        for (long d : t.s2) check_index(d);
        for (auto [d, k] : t.mono.a) check_index(d);
        for (auto [d, k] : t.mono.u) check_index(d);
        auto td = bredon::degree_of(t);
        if (deg && !(*deg == td)) throw std::invalid_argument("inhomogeneous sum: " + deg->str() + " vs " + td.str());
        deg = td;
        auto a = absorb(t, ctx);
        if (a.is_unknown()) return a;
        for (auto& x : a.terms) pending.push_back(x);
    }
    if (!pending.empty() && cheap_vanishes(n_, *deg)) {
        ctx.note("target group vanishes");
        out.kind = SymbolicElement::Kind::Zero;
        return out;
    }
    std::vector<Term> au, other;
    for (auto& t : pending) {
        bool pure = t.base == BaseKind::One;
        (pure ? au : other).push_back(t);
    }
    std::vector<Term> terms = normalize_au(au, out.rules);
    std::sort(other.begin(), other.end(), [](const Term& a, const Term& b) { return term_key(a) < term_key(b); });
    for (auto& t : other) {
        if (!terms.empty() && terms.back().same_shape(t) && terms.back().base != BaseKind::One)
            terms.back().coef += t.coef;
        else
            terms.push_back(t);
    }
    std::vector<Term> kept;
    for (auto& t : terms) {
        if (t.base == BaseKind::Omega && t.mono.empty()) t.coef = mod(t.coef, t.s1.back());
        if (t.coef != 0) kept.push_back(t);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) { return term_key(a) < term_key(b); });
    out.terms = kept;
    out.kind = kept.empty() ? SymbolicElement::Kind::Zero : SymbolicElement::Kind::Sum;
    return out;
}

SymbolicElement Ring::multiply(const SymbolicElement& x, const SymbolicElement& y) const
{
    if (x.is_unknown()) return x;
    if (y.is_unknown()) return y;
    if (x.is_zero() || y.is_zero()) return SymbolicElement::zero();
    auto nx = normalize(x), ny = normalize(y);
    if (nx.is_unknown() || nx.is_zero()) return nx;
    if (ny.is_unknown() || ny.is_zero()) return ny;
    SymbolicElement prod;
    prod.kind = SymbolicElement::Kind::Sum;
    Ctx ctx{n_, &prod.rules};
    for (const auto& s : nx.terms)
        for (const auto& t : ny.terms) {
            auto c = combine_bases(s, t, ctx);
            if (c.is_unknown()) return c;
            for (auto& term : c.terms) prod.terms.push_back(term);
        }
    if (prod.terms.empty()) {
        SymbolicElement z;
        z.rules = prod.rules;
        return z;
    }
    return normalize(prod);
}

SymbolicElement Ring::add(const SymbolicElement& x, const SymbolicElement& y) const
{
    if (x.is_unknown()) return x;
    if (y.is_unknown()) return y;
    if (x.is_zero()) return normalize(y);
    if (y.is_zero()) return normalize(x);
    SymbolicElement s;
    s.kind = SymbolicElement::Kind::Sum;
    s.terms = x.terms;
    s.terms.insert(s.terms.end(), y.terms.begin(), y.terms.end());
    return normalize(s);
}

SymbolicElement Ring::scale(const SymbolicElement& x, const Int& k) const
{
    if (x.kind != SymbolicElement::Kind::Sum) return x;
    auto s = x;
    for (auto& t : s.terms) t.coef *= k;
    return normalize(s);
}

GradingDegree Ring::degree_of(const SymbolicElement& e) const
{
    if (e.is_unknown()) throw std::invalid_argument("degree of an unknown element");
    if (e.is_zero()) throw std::invalid_argument("zero has no degree");
    return bredon::degree_of(e.terms.front());
}

std::optional<Int> Ring::order_of(const SymbolicElement& e) const
{
    if (e.is_unknown()) throw std::invalid_argument("order of an unknown element");
    if (e.is_zero()) return Int(1);
    Int total = 1;
    for (const auto& t : e.terms) {
        Int o;
        if (t.base == BaseKind::One) {
            o = au_order(t);
            if (o == 0) return std::nullopt;
        } else if (t.base == BaseKind::Omega && t.mono.empty()) {
            const Int b = t.s1.back();
            o = b / gcd(mod(t.coef, b), b);
        } else if (t.mono.empty()) {
            return std::nullopt;
        } else {
            auto g = group(n_, bredon::degree_of(t)).at(1);
            if (g.rank > 0 || g.torsion.empty()) return std::nullopt;
            o = g.torsion.back();
        }
        total = lcm(total, o);
    }
    return total;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(const Ring& r, std::string s) : ring_(r), s_(std::move(s)) {}

    SymbolicElement run()
    {
        skip();
        bool neg = false;
        if (peek() == '-') {
            ++i_;
            neg = true;
        }
        auto acc = term();
        if (neg) acc = ring_.scale(acc, -1);
        for (;;) {
            skip();
            if (i_ >= s_.size()) break;
            char op = s_[i_];
            if (op != '+' && op != '-') fail("expected + or -");
            ++i_;
            auto t = term();
            if (op == '-') t = ring_.scale(t, -1);
            acc = ring_.add(acc, t);
        }
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        size_t end = i_;
        while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end])) && s_[end] != '*') ++end;
        std::string tok = s_.substr(i_, end - i_);
        throw std::invalid_argument(what + " at position " + std::to_string(i_) + " near '" + tok + "'");
    }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek()
    {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool eat(const std::string& w)
    {
        skip();
        if (s_.compare(i_, w.size(), w) == 0) {
            i_ += w.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& w)
    {
        if (!eat(w)) fail("expected '" + w + "'");
    }
    long number()
    {
        skip();
        size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == i_) fail("expected a number");
        long v = std::stol(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }
    Int big_number()
    {
        skip();
        size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        Int v(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }
    std::vector<long> list()
    {
        std::vector<long> xs{number()};
        while (eat(",")) xs.push_back(number());
        return xs;
    }
    long index()
    {
        const size_t at = i_;
        long d = number();
        if (d < 1 || ring_.n() % d != 0) {
            i_ = at;
            fail("index " + std::to_string(d) + " does not divide n = " + std::to_string(ring_.n()));
        }
        return d;
    }
    int power()
    {
        if (!eat("^")) return 1;
        return static_cast<int>(number());
    }
    SymbolicElement factor()
    {
        skip();
        if (std::isdigit(static_cast<unsigned char>(peek()))) return SymbolicElement::integer(big_number());
        if (eat("gamma")) return SymbolicElement::gamma(index());
        if (eat("chi(")) {
            long b = index();
            expect(",");
            long c = index();
            expect(")");
            int e = 1;
            if (eat("^-1")) e = -1;
            return SymbolicElement::chi(b, c, e);
        }
        if (eat("edge(")) {
            std::vector<long> b{index()};
            while (eat(",")) b.push_back(index());
            expect(")");
            return SymbolicElement::edge(b);
        }
        if (eat("omega(")) {
            expect("u:");
            auto u = list();
            expect(";");
            expect("a:");
            auto a = list();
            expect(")");
            for (long d : u) ring_.normalize(SymbolicElement::u(d));
            for (long d : a) ring_.normalize(SymbolicElement::a(d));
            return SymbolicElement::omega(u, a);
        }
        if (eat("u[")) {
            long c = index();
            expect(":");
            long b = index();
            expect("]");
            return SymbolicElement::bracket(c, b);
        }
        if (eat("a")) {
            long d = index();
            int k = power();
            auto e = SymbolicElement::a(d);
            e.terms[0].mono.a[d] = k;
            return e;
        }
        if (eat("u")) {
            long d = index();
            int k = power();
            auto e = SymbolicElement::u(d);
            e.terms[0].mono.u[d] = k;
            return e;
        }
        fail("unexpected token");
    }
    SymbolicElement term()
    {
        auto acc = factor();
        while (peek() == '*') {
            ++i_;
            acc = ring_.multiply(acc, factor());
        }
        return ring_.normalize(acc);
    }

    const Ring& ring_;
    std::string s_;
    size_t i_ = 0;
};

}  // namespace

SymbolicElement Ring::parse(const std::string& text) const { return Parser(*this, text).run(); }

}  // namespace bredon
