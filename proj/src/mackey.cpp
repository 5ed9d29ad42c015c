#include "bredon/mackey.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bredon {

namespace {

inline long gcdl(long a, long b) { return std::gcd(a, b); }

inline long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline void add_mul(long& acc, long a, long b)
{
    long p;
    if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &acc))
        throw std::overflow_error("span morphism coefficient overflow");
}

inline long add_checked(long a, long b)
{
    long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("span morphism coefficient overflow");
    return r;
}

}  // namespace

SpanMorphism::SpanMorphism(long b, long c) : src(b), dst(c), gr(gcdl(b, c), 0)
{
    if (b < 1 || c < 1) throw std::invalid_argument("SpanMorphism: orbit sizes must be positive");
}

SpanMorphism SpanMorphism::from_span(long b, long c, const std::vector<long>& span)
{
    SpanMorphism f(b, c);
    const long g = f.width();
    if (static_cast<long>(span.size()) != g)
        throw std::invalid_argument("SpanMorphism: span vector must have length (b,c)");
    for (long i = 0; i < g; ++i) f.gr[mod(-i, g)] = span[i];
    return f;
}

SpanMorphism SpanMorphism::from_full(long b, long c, const std::vector<long>& x)
{
    SpanMorphism f(b, c);
    if (static_cast<long>(x.size()) != c) throw std::invalid_argument("SpanMorphism: full vector must have length c");
    const long g = f.width();
    for (long r = 0; r < c; ++r)
        if (x[r] != x[r % g]) throw std::invalid_argument("SpanMorphism: vector is not fixed by t^b");
    for (long j = 0; j < g; ++j) f.gr[j] = x[j];
    return f;
}

std::vector<long> SpanMorphism::span() const
{
    const long g = width();
    std::vector<long> s(g);
    for (long i = 0; i < g; ++i) s[i] = gr[mod(-i, g)];
    return s;
}

std::vector<long> SpanMorphism::full() const
{
    std::vector<long> x(dst);
    const long g = width();
    for (long r = 0; r < dst; ++r) x[r] = gr[r % g];
    return x;
}

bool SpanMorphism::is_zero() const
{
    for (long v : gr)
        if (v) return false;
    return true;
}

SpanMorphism SpanMorphism::operator+(const SpanMorphism& o) const
{
    if (src != o.src || dst != o.dst) throw std::invalid_argument("SpanMorphism: shape mismatch in sum");
    SpanMorphism r = *this;
    for (size_t i = 0; i < gr.size(); ++i) r.gr[i] = add_checked(r.gr[i], o.gr[i]);
    return r;
}

SpanMorphism SpanMorphism::operator-() const { return scaled(-1); }

SpanMorphism SpanMorphism::operator-(const SpanMorphism& o) const { return *this + (-o); }

SpanMorphism SpanMorphism::scaled(long k) const
{
    SpanMorphism r = *this;
    for (auto& v : r.gr) {
        long p;
        if (__builtin_mul_overflow(v, k, &p)) throw std::overflow_error("span morphism coefficient overflow");
        v = p;
    }
    return r;
}

std::vector<SpanMorphism> span_basis(long b, long c, long n)
{
    if (b < 1 || c < 1 || n % b || n % c)
        throw std::invalid_argument("span_basis: orbits must be divisors of n");
    const long g = gcdl(b, c);
    std::vector<SpanMorphism> out;
    for (long i = 0; i < g; ++i) {
        std::vector<long> e(g, 0);
        e[i] = 1;
        out.push_back(SpanMorphism::from_span(b, c, e));
    }
    return out;
}

SpanMorphism compose(const SpanMorphism& g, const SpanMorphism& f)
{
    if (f.dst != g.src) throw std::invalid_argument("compose: maps are not composable");
    // f(e_0) = sum_r v[r] e_r over Z/c and g(e_r) = t^r g(e_0); collect the
    // coefficient of e_s for s < (b,d).
    SpanMorphism h(f.src, g.dst);
    const long c = f.dst;
    const long g1 = f.width(), g2 = g.width(), g3 = h.width();
    for (long r = 0; r < c; ++r) {
        const long vr = f.gr[r % g1];
        if (!vr) continue;
        for (long s = 0; s < g3; ++s) add_mul(h.gr[s], vr, g.gr[mod(s - r, g2)]);
    }
    return h;
}

long normity(const SpanMorphism& f)
{
    long s = 0;
    for (long v : f.gr) s = add_checked(s, v);
    return s;
}

SpanMorphism identity(long d)
{
    SpanMorphism f(d, d);
    f.gr[0] = 1;
    return f;
}

SpanMorphism rt_power(long d, long k)
{
    SpanMorphism f(d, d);
    f.gr[mod(k, d)] = 1;
    return f;
}

SpanMorphism r_pi(long b)
{
    SpanMorphism f(b, 1);
    f.gr[0] = 1;
    return f;
}

SpanMorphism i_pi(long c)
{
    SpanMorphism f(1, c);
    f.gr[0] = 1;
    return f;
}

SpanMorphism i_pi_r_pi(long b, long c)
{
    SpanMorphism f(b, c);
    for (auto& v : f.gr) v = 1;
    return f;
}

SpanMorphism special(Special kind, long src, long dst, const std::vector<long>& m)
{
    switch (kind) {
    case Special::Identity:
        if (src != dst) throw std::invalid_argument("special: identity needs src == dst");
        return identity(src);
    case Special::Rt:
        if (src != dst) throw std::invalid_argument("special: Rt needs src == dst");
        return rt_power(src, 1);
    case Special::RPi:
        if (dst != 1) throw std::invalid_argument("special: R pi needs target Theta_1");
        return r_pi(src);
    case Special::IPi:
        if (src != 1) throw std::invalid_argument("special: I pi needs source Theta_1");
        return i_pi(dst);
    case Special::IPiRPi:
        return i_pi_r_pi(src, dst);
    case Special::Bracket:
        return SpanMorphism::from_span(src, dst, m);
    }
    throw std::invalid_argument("special: unknown kind");
}

std::optional<SpanMorphism> unit_inverse(const SpanMorphism& f)
{
    if (f.src != f.dst) return std::nullopt;
    long pos = -1, sign = 0;
    for (long j = 0; j < f.width(); ++j) {
        if (!f.gr[j]) continue;
        if (pos >= 0 || (f.gr[j] != 1 && f.gr[j] != -1)) return std::nullopt;
        pos = j;
        sign = f.gr[j];
    }
    if (pos < 0) return std::nullopt;
    return rt_power(f.src, -pos).scaled(sign);
}

BlockMorphism::BlockMorphism(FreeModule s, FreeModule d) : src(std::move(s)), dst(std::move(d))
{
    blocks.resize(dst.size());
    for (size_t i = 0; i < dst.size(); ++i) {
        blocks[i].reserve(src.size());
        for (size_t j = 0; j < src.size(); ++j) blocks[i].emplace_back(src[j], dst[i]);
    }
}

bool BlockMorphism::is_zero() const
{
    for (const auto& row : blocks)
        for (const auto& b : row)
            if (!b.is_zero()) return false;
    return true;
}

BlockMorphism compose(const BlockMorphism& g, const BlockMorphism& f)
{
    if (f.dst != g.src) throw std::invalid_argument("compose: block shapes do not match");
    BlockMorphism h(f.src, g.dst);
    for (size_t i = 0; i < g.dst.size(); ++i)
        for (size_t k = 0; k < f.dst.size(); ++k) {
            if (g.at(i, k).is_zero()) continue;
            for (size_t j = 0; j < f.src.size(); ++j) {
                if (f.at(k, j).is_zero()) continue;
                h.at(i, j) = h.at(i, j) + compose(g.at(i, k), f.at(k, j));
            }
        }
    return h;
}

BlockMorphism operator+(const BlockMorphism& a, const BlockMorphism& b)
{
    if (a.src != b.src || a.dst != b.dst) throw std::invalid_argument("BlockMorphism: shape mismatch in sum");
    BlockMorphism r = a;
    for (size_t i = 0; i < a.dst.size(); ++i)
        for (size_t j = 0; j < a.src.size(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

BlockMorphism operator-(const BlockMorphism& a, const BlockMorphism& b)
{
    BlockMorphism nb = b;
    for (auto& row : nb.blocks)
        for (auto& x : row) x = -x;
    return a + nb;
}

long level_rank(long d, long e) { return gcdl(d, e); }

long level_rank(const FreeModule& m, long e)
{
    long r = 0;
    for (long d : m) r += gcdl(d, e);
    return r;
}

namespace {

void fill_level_block(const SpanMorphism& f, long e, SmallMatrix& out, size_t r0, size_t c0)
{
    const long x = f.src, y = f.dst;
    const long gx = gcdl(x, e), gy = gcdl(y, e), w = f.width();
    for (long jp = 0; jp < gy; ++jp)
        for (long j = 0; j < gx; ++j) {
            long s = 0;
            for (long r = j; r < x; r += gx) add_mul(s, 1, f.gr[mod(jp - r, w)]);
            out(r0 + jp, c0 + j) = s;
        }
}

}  // namespace

SmallMatrix evaluate(const SpanMorphism& f, long e)
{
    SmallMatrix m(gcdl(f.dst, e), gcdl(f.src, e));
    fill_level_block(f, e, m, 0, 0);
    return m;
}

SmallMatrix evaluate(const BlockMorphism& f, long e)
{
    SmallMatrix m(level_rank(f.dst, e), level_rank(f.src, e));
    size_t r0 = 0;
    for (size_t i = 0; i < f.dst.size(); ++i) {
        size_t c0 = 0;
        for (size_t j = 0; j < f.src.size(); ++j) {
            if (!f.at(i, j).is_zero()) fill_level_block(f.at(i, j), e, m, r0, c0);
            c0 += gcdl(f.src[j], e);
        }
        r0 += gcdl(f.dst[i], e);
    }
    return m;
}

SmallMatrix restriction_matrix(const FreeModule& m, long e1, long e2)
{
    if (e2 % e1) throw std::invalid_argument("restriction_matrix: need e1 | e2");
    SmallMatrix r(level_rank(m, e2), level_rank(m, e1));
    size_t r0 = 0, c0 = 0;
    for (long x : m) {
        const long g1 = gcdl(x, e1), g2 = gcdl(x, e2);
        for (long j2 = 0; j2 < g2; ++j2) r(r0 + j2, c0 + j2 % g1) = 1;
        r0 += g2;
        c0 += g1;
    }
    return r;
}

FreeModule restrict_module(const FreeModule& m, long e)
{
    FreeModule out;
    for (long x : m) {
        const long g = gcdl(x, e);
        for (long j = 0; j < g; ++j) out.push_back(x / g);
    }
    return out;
}

BlockMorphism restrict_morphism(const BlockMorphism& f, long e)
{
    BlockMorphism out(restrict_module(f.src, e), restrict_module(f.dst, e));
    size_t r0 = 0;
    for (size_t a = 0; a < f.dst.size(); ++a) {
        const long y = f.dst[a], gy = gcdl(y, e), yp = y / gy;
        size_t c0 = 0;
        for (size_t b = 0; b < f.src.size(); ++b) {
            const long x = f.src[b], gx = gcdl(x, e), xp = x / gx;
            const auto& blk = f.at(a, b);
            if (!blk.is_zero()) {
                const long w = blk.width();
                for (long i = 0; i < gy; ++i)
                    for (long j = 0; j < gx; ++j) {
                        SpanMorphism r(xp, yp);
                        for (long k = 0; k < r.width(); ++k) r.gr[k] = blk.gr[mod(i + e * k - j, y) % w];
                        out.at(r0 + i, c0 + j) = r;
                    }
            }
            c0 += gx;
        }
        r0 += gy;
    }
    return out;
}

AbelianGroup AbelianGroup::from_invariants(long rank, std::vector<Int> diag)
{
    AbelianGroup g;
    g.rank = rank;
    g.torsion = normalize_torsion(std::move(diag));
    return g;
}

Int AbelianGroup::torsion_order() const
{
    Int o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
}

std::string AbelianGroup::str() const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank == 1) {
        os << "Z";
        first = false;
    } else if (rank > 1) {
        os << "Z^" << rank;
        first = false;
    }
    for (const auto& t : torsion) {
        os << (first ? "" : "+") << "Z/" << t;
        first = false;
    }
    return os.str();
}

std::string str(const LevelwiseGroup& g)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, a] : g) {
        os << (first ? "" : ", ") << "Theta_" << e << ": " << a.str();
        first = false;
    }
    return os.str();
}

NamedMackey NamedMackey::zmod_i(long d)
{
    NamedMackey m;
    m.kind = Kind::ZmodI;
    m.d = d;
    return m;
}

NamedMackey NamedMackey::ideal(long d)
{
    NamedMackey m;
    m.kind = Kind::I;
    m.d = d;
    return m;
}

NamedMackey NamedMackey::zed(long e, long d)
{
    if (e % d) throw std::invalid_argument("Z(e;d) requires d | e");
    NamedMackey m;
    m.kind = Kind::Zed;
    m.e = e;
    m.d = d;
    return m;
}

NamedMackey NamedMackey::unrecognized(LevelwiseGroup g)
{
    NamedMackey m;
    m.kind = Kind::Unrecognized;
    m.raw = std::move(g);
    return m;
}

NamedMackey NamedMackey::canonical() const
{
    switch (kind) {
    case Kind::ZmodI:
        return d == 1 ? zero() : *this;
    case Kind::I:
        return d == 1 ? z() : *this;
    case Kind::Zed: {
        long ee = 1, dd = 1;
        for (long p : prime_factors(e)) {
            long pe = 1, pd = 1;
            for (long t = e; t % p == 0; t /= p) pe *= p;
            for (long t = d; t % p == 0; t /= p) pd *= p;
            if (pe != pd) {
                ee *= pe;
                dd *= pd;
            }
        }
        if (ee == 1) return z();
        if (dd == 1) return ideal(ee);
        return zed(ee, dd);
    }
    case Kind::Sum: {
        NamedMackey s;
        s.kind = Kind::Sum;
        for (const auto& p : parts) {
            auto c = p.canonical();
            if (c.kind != Kind::Zero) s.parts.push_back(c);
        }
        if (s.parts.empty()) return zero();
        if (s.parts.size() == 1) return s.parts[0];
        return s;
    }
    default:
        return *this;
    }
}

bool NamedMackey::same_as(const NamedMackey& o) const
{
    auto a = canonical(), b = o.canonical();
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Kind::Zero:
    case Kind::Z:
        return true;
    case Kind::ZmodI:
    case Kind::I:
        return a.d == b.d;
    case Kind::Zed:
        return a.d == b.d && a.e == b.e;
    case Kind::Sum:
        if (a.parts.size() != b.parts.size()) return false;
        for (size_t i = 0; i < a.parts.size(); ++i)
            if (!a.parts[i].same_as(b.parts[i])) return false;
        return true;
    case Kind::Unrecognized:
        return a.raw == b.raw;
    }
    return false;
}

LevelwiseGroup NamedMackey::levels(long n) const
{
    LevelwiseGroup out;
    for (long f : divisors(n)) {
        AbelianGroup g;
        switch (kind) {
        case Kind::Zero:
            break;
        case Kind::Z:
        case Kind::I:
        case Kind::Zed:
            g.rank = 1;
            break;
        case Kind::ZmodI:
            g = AbelianGroup::from_invariants(0, {Int(d / gcdl(d, f))});
            break;
        case Kind::Sum: {
            std::vector<Int> tors;
            for (const auto& p : parts) {
                auto pg = p.levels(n).at(f);
                g.rank += pg.rank;
                tors.insert(tors.end(), pg.torsion.begin(), pg.torsion.end());
            }
            g.torsion = normalize_torsion(tors);
            break;
        }
        case Kind::Unrecognized:
            g = raw.count(f) ? raw.at(f) : AbelianGroup{};
            break;
        }
        out[f] = g;
    }
    return out;
}

std::string NamedMackey::str() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Z: return "Z";
    case Kind::ZmodI: os << "Z/I_" << d; return os.str();
    case Kind::I: os << "I_" << d; return os.str();
    case Kind::Zed: os << "Z(" << e << ";" << d << ")"; return os.str();
    case Kind::Sum:
        for (size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i].str();
        return os.str();
    case Kind::Unrecognized: return "unrecognized";
    }
    return "?";
}

NamedMackey recognize(const LevelwiseGroup& g, const RestrictionMeta& meta, long n)
{
    const auto divs = divisors(n);
    bool all_zero = true, all_z = true, all_cyclic_torsion = true;
    for (long f : divs) {
        auto it = g.find(f);
        if (it == g.end()) return NamedMackey::unrecognized(g);
        const auto& a = it->second;
        if (!a.is_zero()) all_zero = false;
        if (!(a.rank == 1 && a.torsion.empty())) all_z = false;
        if (!(a.rank == 0 && a.torsion.size() <= 1)) all_cyclic_torsion = false;
    }
    if (all_zero) return NamedMackey::zero();

    if (all_z) {
        // Rank one lattices: Z(e;d) has restriction index (e,f)/(d,f) at f.
        for (long f : divs)
            if (!meta.free_index.count(f) || meta.free_index.at(f) == 0) return NamedMackey::unrecognized(g);
        for (long e : divs)
            for (long d : divs) {
                if (e % d) continue;
                bool ok = true;
                for (long f : divs)
                    if (meta.free_index.at(f) != gcdl(e, f) / gcdl(d, f)) {
                        ok = false;
                        break;
                    }
                if (ok) return NamedMackey::zed(e, d).canonical();
            }
        return NamedMackey::unrecognized(g);
    }

    if (all_cyclic_torsion) {
        const auto& top = g.at(1);
        if (top.torsion.empty()) return NamedMackey::unrecognized(g);
        const Int dd = top.torsion[0];
        if (!dd.fits_slong_p() || n % dd.get_si()) return NamedMackey::unrecognized(g);
        const long d = dd.get_si();
        for (long f : divs) {
            const long want = d / gcdl(d, f);
            const auto& a = g.at(f);
            const long have = a.torsion.empty() ? 1 : to_long(a.torsion[0]);
            if (have != want) return NamedMackey::unrecognized(g);
            if (!meta.surjective.count(f) || !meta.surjective.at(f)) return NamedMackey::unrecognized(g);
        }
        return NamedMackey::zmod_i(d);
    }
    return NamedMackey::unrecognized(g);
}

}  // namespace bredon
