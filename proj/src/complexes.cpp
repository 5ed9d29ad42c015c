#include "bredon/complexes.hpp"

#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace bredon {

namespace {

long gcdl(long a, long b) { return std::gcd(a, b); }
long lcml(long a, long b) { return std::lcm(a, b); }
long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

BlockMorphism single(long src, long dst, const SpanMorphism& f)
{
    BlockMorphism b(FreeModule{src}, FreeModule{dst});
    b.at(0, 0) = f;
    return b;
}

BlockMorphism identity_block(const FreeModule& m)
{
    BlockMorphism b(m, m);
    for (size_t i = 0; i < m.size(); ++i) b.at(i, i) = identity(m[i]);
    return b;
}

FreeModule box_module(const FreeModule& a, const FreeModule& b)
{
    FreeModule out;
    for (long x : a)
        for (long y : b)
            for (long i = 0; i < gcdl(x, y); ++i) out.push_back(lcml(x, y));
    return out;
}

// Offsets of the (ia, ib) pieces inside box_module(a, b).
std::vector<std::vector<size_t>> box_offsets(const FreeModule& a, const FreeModule& b)
{
    std::vector<std::vector<size_t>> off(a.size(), std::vector<size_t>(b.size()));
    size_t o = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            off[i][j] = o;
            o += gcdl(a[i], b[j]);
        }
    return off;
}

// f x g restricted to orbit `i` of F_x box F_y; returns the blocks into the
// orbits of F_x' box F_y'.
std::vector<SpanMorphism> box_block(const SpanMorphism& f, const SpanMorphism& g, long i)
{
    const long x = f.src, y = g.src, xp = f.dst, yp = g.dst;
    const long gp = gcdl(xp, yp), lp = lcml(xp, yp);
    const auto X = f.full(), Y = g.full();
    std::vector<std::vector<long>> full(gp, std::vector<long>(lp, 0));
    // (f x g)(e_0 x e_i) = sum X_r Y_q e_r x e_{q+i}
    for (long r = 0; r < xp; ++r) {
        if (!X[r]) continue;
        for (long q = 0; q < yp; ++q) {
            if (!Y[q]) continue;
            const long ip = mod(q + i - r, gp);
            const long want = mod(q + i - ip, yp);
            long s = r;
            while (s % yp != want) s += xp;
            full[ip][s] += X[r] * Y[q];
        }
    }
    std::vector<SpanMorphism> out;
    for (long ip = 0; ip < gp; ++ip) out.push_back(SpanMorphism::from_full(lcml(x, y), lp, full[ip]));
    return out;
}

SpanMorphism dual_map(const SpanMorphism& f)
{
    SpanMorphism d(f.dst, f.src);
    const long g = f.width();
    for (long r = 0; r < g; ++r) d.gr[r] = f.gr[mod(-r, g)];
    return d;
}

void check_divides(long d, long n)
{
    if (n < 1 || d < 1 || n % d) throw std::invalid_argument(std::to_string(d) + " does not divide " + std::to_string(n));
}

}  // namespace

FreeModule FreeComplex::term(int p) const { return in_range(p) ? terms[p - bottom_degree] : FreeModule{}; }

BlockMorphism FreeComplex::diff(int p) const
{
    if (in_range(p) && in_range(p - 1)) return diffs[p - 1 - bottom_degree];
    return BlockMorphism(term(p), term(p - 1));
}

void FreeComplex::check() const
{
    if (diffs.size() + 1 != terms.size() && !(terms.empty() && diffs.empty()))
        throw std::logic_error("FreeComplex: wrong number of differentials");
    for (int p = bottom_degree + 2; p <= top_degree(); ++p)
        if (!compose(diff(p - 1), diff(p)).is_zero())
            throw std::logic_error("FreeComplex: d o d != 0 out of degree " + std::to_string(p));
}

FreeComplex sphere(long d, long n)
{
    check_divides(d, n);
    FreeComplex c;
    c.terms = {{1}, {d}, {d}};
    c.diffs = {single(d, 1, r_pi(d)), single(d, d, identity(d) - rt_power(d, 1))};
    return c;
}

FreeComplex sphere_dual(long d, long n) { return dual(sphere(d, n)); }

FreeComplex general_sphere(long k, long n)
{
    if (k < 1 || k >= n) throw std::invalid_argument("general_sphere: need 1 <= k < n");
    const long g = gcdl(k, n), b = n / g;
    long a = 1;
    while (b > 1 && mod(a * (k / g), b) != 1) ++a;
    FreeComplex c;
    c.terms = {{1}, {b}, {b}};
    c.diffs = {single(b, 1, r_pi(b)), single(b, b, identity(b) - rt_power(b, a))};
    return c;
}

BlockMorphism box_maps(const BlockMorphism& f, const BlockMorphism& g)
{
    BlockMorphism out(box_module(f.src, g.src), box_module(f.dst, g.dst));
    const auto so = box_offsets(f.src, g.src), to = box_offsets(f.dst, g.dst);
    for (size_t ja = 0; ja < f.src.size(); ++ja)
        for (size_t jb = 0; jb < g.src.size(); ++jb)
            for (size_t ia = 0; ia < f.dst.size(); ++ia) {
                const auto& fa = f.at(ia, ja);
                if (fa.is_zero()) continue;
                for (size_t ib = 0; ib < g.dst.size(); ++ib) {
                    const auto& gb = g.at(ib, jb);
                    if (gb.is_zero()) continue;
                    for (long i = 0; i < gcdl(f.src[ja], g.src[jb]); ++i) {
                        auto blocks = box_block(fa, gb, i);
                        for (size_t ip = 0; ip < blocks.size(); ++ip)
                            out.at(to[ia][ib] + ip, so[ja][jb] + i) = blocks[ip];
                    }
                }
            }
    return out;
}

FreeComplex box(const FreeComplex& a, const FreeComplex& b)
{
    FreeComplex c;
    if (a.terms.empty() || b.terms.empty()) return c;
    c.bottom_degree = a.bottom_degree + b.bottom_degree;
    const int top = a.top_degree() + b.top_degree();
    // piece offsets: degree P -> (p -> summand offset)
    std::vector<std::map<int, size_t>> off;
    for (int P = c.bottom_degree; P <= top; ++P) {
        FreeModule m;
        std::map<int, size_t> o;
        for (int p = a.bottom_degree; p <= a.top_degree(); ++p) {
            if (!b.in_range(P - p)) continue;
            o[p] = m.size();
            auto piece = box_module(a.term(p), b.term(P - p));
            m.insert(m.end(), piece.begin(), piece.end());
        }
        c.terms.push_back(m);
        off.push_back(o);
    }
    for (int P = c.bottom_degree + 1; P <= top; ++P) {
        const size_t t = P - c.bottom_degree;
        BlockMorphism d(c.terms[t], c.terms[t - 1]);
        auto place = [&](const BlockMorphism& blk, size_t r0, size_t c0, long sign) {
            for (size_t i = 0; i < blk.dst.size(); ++i)
                for (size_t j = 0; j < blk.src.size(); ++j)
                    if (!blk.at(i, j).is_zero()) d.at(r0 + i, c0 + j) = sign > 0 ? blk.at(i, j) : -blk.at(i, j);
        };
        for (auto [p, o] : off[t]) {
            const int q = P - p;
            if (a.in_range(p - 1))
                place(box_maps(a.diff(p), identity_block(b.term(q))), off[t - 1].at(p - 1), o, 1);
            if (b.in_range(q - 1))
                place(box_maps(identity_block(a.term(p)), b.diff(q)), off[t - 1].at(p), o, (p % 2 == 0) ? 1 : -1);
        }
        c.diffs.push_back(d);
    }
    return c;
}

FreeComplex dual(const FreeComplex& c)
{
    FreeComplex d;
    d.bottom_degree = -c.top_degree();
    for (int p = c.top_degree(); p >= c.bottom_degree; --p) d.terms.push_back(c.term(p));
    // dual differential out of degree -(p-1) is the transpose of diff(p)
    for (int p = c.top_degree(); p > c.bottom_degree; --p) {
        const auto src = c.diff(p);
        BlockMorphism t(src.dst, src.src);
        for (size_t i = 0; i < src.dst.size(); ++i)
            for (size_t j = 0; j < src.src.size(); ++j) t.at(j, i) = dual_map(src.at(i, j));
        d.diffs.push_back(t);
    }
    return d;
}

FreeComplex linear_model_string(const std::vector<long>& b)
{
    FreeComplex c;
    c.terms.push_back({1});
    long prev = 1;
    for (long x : b) {
        c.terms.push_back({x});
        c.terms.push_back({x});
        c.diffs.push_back(single(x, prev, i_pi_r_pi(x, prev)));
        c.diffs.push_back(single(x, x, identity(x) - rt_power(x, 1)));
        prev = x;
    }
    return c;
}

FreeComplex linear_model(const DivisorTuple& b, long n)
{
    if (b.empty()) throw std::invalid_argument("linear_model: empty tuple");
    for (const auto& x : b) check_divides(to_long(x), n);
    return linear_model_string(to_small(lcm_gcd_seq(b)));
}

FreeComplex sphere_product(const std::vector<long>& bs, long n)
{
    FreeComplex c;
    c.terms = {{1}};
    for (long b : bs) c = reduce(box(c, sphere(b, n)));
    return c;
}

FreeComplex restrict_complex(const FreeComplex& c, long e)
{
    FreeComplex r;
    r.bottom_degree = c.bottom_degree;
    for (const auto& t : c.terms) r.terms.push_back(restrict_module(t, e));
    for (const auto& d : c.diffs) r.diffs.push_back(restrict_morphism(d, e));
    return r;
}

namespace {

// Sparse storage of one differential for the cancellation pass.
struct SparseDiff {
    std::vector<std::map<size_t, SpanMorphism>> col;  // by source summand
    std::vector<std::set<size_t>> row;                // by target summand

    void set(size_t i, size_t j, const SpanMorphism& f)
    {
        if (f.is_zero()) {
            col[j].erase(i);
            row[i].erase(j);
        } else {
            col[j][i] = f;
            row[i].insert(j);
        }
    }
    void drop_col(size_t j)
    {
        for (auto& [i, f] : col[j]) row[i].erase(j);
        col[j].clear();
    }
    void drop_row(size_t i)
    {
        for (size_t j : row[i]) col[j].erase(i);
        row[i].clear();
    }
};

}  // namespace

FreeComplex reduce(const FreeComplex& c)
{
    const size_t T = c.terms.size();
    if (T < 2) return c;
    std::vector<std::vector<char>> alive(T);
    for (size_t t = 0; t < T; ++t) alive[t].assign(c.terms[t].size(), 1);
    std::vector<SparseDiff> D(T);
    for (size_t t = 1; t < T; ++t) {
        const auto& d = c.diffs[t - 1];
        D[t].col.resize(d.src.size());
        D[t].row.resize(d.dst.size());
        for (size_t i = 0; i < d.dst.size(); ++i)
            for (size_t j = 0; j < d.src.size(); ++j)
                if (!d.at(i, j).is_zero()) D[t].set(i, j, d.at(i, j));
    }

    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t t = 1; t < T; ++t) {
            auto& d = D[t];
            for (size_t j0 = 0; j0 < d.col.size(); ++j0) {
                size_t i0 = 0, best = SIZE_MAX;
                std::optional<SpanMorphism> inv;
                for (auto& [i, f] : d.col[j0]) {
                    if (d.row[i].size() >= best) continue;
                    if (auto u = unit_inverse(f)) {
                        best = d.row[i].size();
                        i0 = i;
                        inv = u;
                    }
                }
                if (!inv) continue;
                std::vector<std::pair<size_t, SpanMorphism>> gamma, delta;
                for (auto& [i, f] : d.col[j0])
                    if (i != i0) gamma.emplace_back(i, f);
                for (size_t j : d.row[i0])
                    if (j != j0) delta.emplace_back(j, compose(*inv, d.col[j].at(i0)));
                d.drop_col(j0);
                d.drop_row(i0);
                for (auto& [j, pd] : delta)
                    for (auto& [i, g] : gamma) {
                        auto it = d.col[j].find(i);
                        SpanMorphism cur = it == d.col[j].end() ? SpanMorphism(pd.src, g.dst) : it->second;
                        d.set(i, j, cur - compose(g, pd));
                    }
                if (t + 1 < T) D[t + 1].drop_row(j0);
                if (t >= 2) D[t - 1].drop_col(i0);
                alive[t][j0] = 0;
                alive[t - 1][i0] = 0;
                progress = true;
            }
        }
    }

    FreeComplex r;
    r.bottom_degree = c.bottom_degree;
    std::vector<std::vector<size_t>> idx(T);
    for (size_t t = 0; t < T; ++t) {
        FreeModule m;
        idx[t].assign(c.terms[t].size(), SIZE_MAX);
        for (size_t j = 0; j < c.terms[t].size(); ++j)
            if (alive[t][j]) {
                idx[t][j] = m.size();
                m.push_back(c.terms[t][j]);
            }
        r.terms.push_back(m);
    }
    for (size_t t = 1; t < T; ++t) {
        BlockMorphism d(r.terms[t], r.terms[t - 1]);
        for (size_t j = 0; j < D[t].col.size(); ++j)
            for (auto& [i, f] : D[t].col[j]) d.at(idx[t - 1][i], idx[t][j]) = f;
        r.diffs.push_back(d);
    }
    return r;
}

AbelianGroup homology_at(const FreeComplex& c, int p, long e)
{
    if (!c.in_range(p)) return {};
    const long r = level_rank(c.term(p), e);
    const auto out = smith_invariants(evaluate(c.diff(p), e));
    const auto in = smith_invariants(evaluate(c.diff(p + 1), e));
    return AbelianGroup::from_invariants(r - static_cast<long>(out.size()) - static_cast<long>(in.size()), in);
}

namespace {

IntMatrix kernel_or_identity(const IntMatrix& a)
{
    if (a.rows() == 0) return IntMatrix::identity(a.cols());
    return kernel_basis(a);
}

// Cycles generating ker(out)/im(in): free generators, then one for each
// nontrivial invariant factor.
std::vector<std::vector<Int>> homology_generators(const IntMatrix& out, const IntMatrix& in)
{
    const IntMatrix K = kernel_or_identity(out);
    const size_t r = K.cols();
    if (r == 0) return {};
    IntMatrix Bk(r, in.cols());
    for (size_t j = 0; j < in.cols(); ++j) {
        auto x = solve(K, in.column(j));
        if (!x) throw std::logic_error("homology_generators: boundary outside cycles");
        for (size_t i = 0; i < r; ++i) Bk(i, j) = (*x)[i];
    }
    std::vector<size_t> chosen_free, chosen_tors;
    IntMatrix Uinv;
    if (in.cols() == 0) {
        Uinv = IntMatrix::identity(r);
        for (size_t j = 0; j < r; ++j) chosen_free.push_back(j);
    } else {
        auto s = smith_form(Bk);
        Uinv = s.Uinv;
        for (size_t j = 0; j < r; ++j) {
            if (j >= s.rank)
                chosen_free.push_back(j);
            else if (abs(s.diag(j)) > 1)
                chosen_tors.push_back(j);
        }
    }
    std::vector<std::vector<Int>> gens;
    for (auto list : {&chosen_free, &chosen_tors})
        for (size_t j : *list) {
            std::vector<Int> v(K.rows(), Int(0));
            for (size_t a = 0; a < K.rows(); ++a)
                for (size_t b = 0; b < r; ++b) v[a] += K(a, b) * Uinv(b, j);
            gens.push_back(v);
        }
    return gens;
}

Int product(const std::vector<Int>& xs)
{
    Int p = 1;
    for (const auto& x : xs) p *= x;
    return p;
}

}  // namespace

std::map<int, HomologyDegree> homology(const FreeComplex& input, long n, HomologyOptions opts)
{
    const FreeComplex c = opts.reduce_first ? reduce(input) : input;
    std::map<int, HomologyDegree> out;
    const auto divs = divisors(n);
    for (int p = c.bottom_degree; p <= c.top_degree(); ++p) {
        HomologyDegree h;
        for (long e : divs) h.levels[e] = homology_at(c, p, e);
        const auto& top = h.levels.at(1);
        const IntMatrix out1 = evaluate(c.diff(p), 1).to_int();
        const IntMatrix in1 = evaluate(c.diff(p + 1), 1).to_int();
        if (!top.is_zero() || opts.generators) {
            const IntMatrix K1 = kernel_or_identity(out1);
            const auto gens = homology_generators(out1, in1);
            for (long f : divs) {
                const IntMatrix R = restriction_matrix(c.term(p), 1, f).to_int();
                const IntMatrix Df = evaluate(c.diff(p + 1), f).to_int();
                const auto& hf = h.levels.at(f);
                if (top.rank == 1 && top.torsion.empty() && hf.rank == 1 && hf.torsion.empty()) {
                    IntMatrix g(gens[0].size(), 1);
                    for (size_t i = 0; i < gens[0].size(); ++i) g(i, 0) = gens[0][i];
                    const IntMatrix w = R * g;
                    const auto inv = smith_invariants(Df.hcat(w));
                    const auto base = smith_invariants(Df);
                    h.meta.free_index[f] = inv.size() > base.size() ? product(inv) / product(base) : Int(0);
                }
                // onto iff boundaries plus restricted cycles fill the cycles
                const IntMatrix span = Df.hcat(R * K1);
                const auto inv = smith_invariants(span);
                const long zf = level_rank(c.term(p), f) -
                                static_cast<long>(smith_invariants(evaluate(c.diff(p), f)).size());
                h.meta.surjective[f] = static_cast<long>(inv.size()) == zf && product(inv) == 1;
            }
            if (opts.generators) h.generators = gens;
        }
        h.named = recognize(h.levels, h.meta, n);
        out[p] = h;
    }
    return out;
}

BlockMorphism ChainMap::at(int p) const
{
    if (src.in_range(p) && dst.in_range(p + shift)) return comps[p - src.bottom_degree];
    return BlockMorphism(src.term(p), dst.term(p + shift));
}

bool is_chain_map(const ChainMap& f)
{
    if (f.comps.size() != f.src.terms.size()) return false;
    for (int p = f.src.bottom_degree; p <= f.src.top_degree(); ++p) {
        const auto c = f.at(p);
        if (c.src != f.src.term(p) || c.dst != f.dst.term(p + f.shift)) return false;
    }
    const long sign = (f.shift % 2 == 0) ? 1 : -1;
    for (int p = f.src.bottom_degree; p <= f.src.top_degree() + 1; ++p) {
        auto lhs = compose(f.dst.diff(p + f.shift), f.at(p));
        auto rhs = compose(f.at(p - 1), f.src.diff(p));
        if (sign < 0) {
            if (!(lhs + rhs).is_zero()) return false;
        } else if (!(lhs - rhs).is_zero()) {
            return false;
        }
    }
    return true;
}

HomComplex::HomComplex(FreeComplex k, FreeComplex l) : k_(std::move(k)), l_(std::move(l))
{
    if (k_.terms.empty() || l_.terms.empty()) return;
    lo_ = l_.bottom_degree - k_.top_degree();
    hi_ = l_.top_degree() - k_.bottom_degree;
    for (int p = lo_; p <= hi_; ++p) {
        std::vector<Block> bl;
        size_t off = 0;
        for (int q = k_.bottom_degree; q <= k_.top_degree(); ++q) {
            if (!l_.in_range(q + p)) continue;
            const auto src = k_.term(q), dst = l_.term(q + p);
            for (size_t j = 0; j < src.size(); ++j)
                for (size_t i = 0; i < dst.size(); ++i) {
                    const long w = gcdl(src[j], dst[i]);
                    bl.push_back({q, i, j, off, w});
                    off += w;
                }
        }
        blocks_[p] = std::move(bl);
        rank_[p] = off;
    }
}

const std::vector<HomComplex::Block>& HomComplex::blocks(int p) const
{
    static const std::vector<Block> none;
    auto it = blocks_.find(p);
    return it == blocks_.end() ? none : it->second;
}

size_t HomComplex::rank(int p) const
{
    auto it = rank_.find(p);
    return it == rank_.end() ? 0 : it->second;
}

size_t HomComplex::find_block(int p, int q, size_t i, size_t j) const
{
    for (const auto& b : blocks(p))
        if (b.q == q && b.i == i && b.j == j) return b.offset;
    throw std::logic_error("HomComplex: missing block");
}

SmallMatrix HomComplex::differential(int p) const
{
    SmallMatrix m(rank(p - 1), rank(p));
    if (m.rows == 0 || m.cols == 0) return m;
    // index of blocks in degree p-1 for quick lookup
    std::map<std::tuple<int, size_t, size_t>, size_t> target;
    for (const auto& b : blocks(p - 1)) target[{b.q, b.i, b.j}] = b.offset;
    const long sign = (p % 2 == 0) ? -1 : 1;  // -(-1)^p
    for (const auto& b : blocks(p)) {
        const long x = k_.term(b.q)[b.j], y = l_.term(b.q + p)[b.i];
        const auto dl = l_.diff(b.q + p);
        const auto dk = k_.diff(b.q + 1);
        for (long s = 0; s < b.width; ++s) {
            SpanMorphism f(x, y);
            f.gr[s] = 1;
            const size_t col = b.offset + s;
            for (size_t ip = 0; ip < dl.dst.size(); ++ip) {
                if (dl.at(ip, b.i).is_zero()) continue;
                const auto h = compose(dl.at(ip, b.i), f);
                const size_t o = target.at({b.q, ip, b.j});
                for (long r = 0; r < h.width(); ++r) m(o + r, col) += h.gr[r];
            }
            for (size_t jp = 0; jp < dk.src.size(); ++jp) {
                if (dk.at(b.j, jp).is_zero()) continue;
                const auto h = compose(f, dk.at(b.j, jp));
                const size_t o = target.at({b.q + 1, b.i, jp});
                for (long r = 0; r < h.width(); ++r) m(o + r, col) += sign * h.gr[r];
            }
        }
    }
    return m;
}

AbelianGroup HomComplex::homology(int p) const
{
    if (p < lo_ || p > hi_) return {};
    const auto out = smith_invariants(differential(p));
    const auto in = smith_invariants(differential(p + 1));
    return AbelianGroup::from_invariants(static_cast<long>(rank(p)) - static_cast<long>(out.size() + in.size()), in);
}

std::vector<Int> HomComplex::vectorize(const ChainMap& f) const
{
    std::vector<Int> v(rank(f.shift), Int(0));
    for (const auto& b : blocks(f.shift)) {
        const auto comp = f.at(b.q);
        const auto& blk = comp.at(b.i, b.j);
        for (long s = 0; s < b.width; ++s) v[b.offset + s] = blk.gr[s];
    }
    return v;
}

ChainMap HomComplex::devectorize(int p, const std::vector<Int>& v) const
{
    ChainMap f;
    f.src = k_;
    f.dst = l_;
    f.shift = p;
    for (int q = k_.bottom_degree; q <= k_.top_degree(); ++q) f.comps.emplace_back(k_.term(q), l_.term(q + p));
    for (const auto& b : blocks(p)) {
        auto& blk = f.comps[b.q - k_.bottom_degree].at(b.i, b.j);
        for (long s = 0; s < b.width; ++s) blk.gr[s] = to_long(v[b.offset + s]);
    }
    return f;
}

bool HomComplex::is_boundary(int p, const std::vector<Int>& v) const
{
    if (v.size() != rank(p)) throw std::invalid_argument("HomComplex::is_boundary: wrong vector length");
    bool zero = true;
    for (const auto& x : v) zero = zero && x == 0;
    if (zero) return true;
    const IntMatrix d = differential(p + 1).to_int();
    IntMatrix col(v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) col(i, 0) = v[i];
    const IntMatrix both = d.rows() ? d.hcat(col) : col;
    const auto a = smith_invariants(d.rows() ? d : IntMatrix(v.size(), 0));
    const auto b = smith_invariants(both);
    return a.size() == b.size() && product(a) == product(b);
}

std::string to_string(HomMethod m)
{
    switch (m) {
    case HomMethod::ClosedForm: return "closed-form";
    case HomMethod::PhiImage: return "phi-image";
    case HomMethod::Oracle: return "oracle";
    }
    return "?";
}

HomotopyGroupResult hom_group(const FreeComplex& k, const FreeComplex& l, int m, bool with_generators)
{
    HomComplex h(k, l);
    HomotopyGroupResult r;
    r.method = HomMethod::Oracle;
    r.group = h.homology(-m);
    if (with_generators && h.rank(-m) > 0) {
        IntMatrix out = h.differential(-m).to_int();
        if (out.rows() == 0) out = IntMatrix(0, h.rank(-m));
        r.raw_generators = homology_generators(out, h.differential(-m + 1).to_int());
    }
    return r;
}

long ChainMapData::w0() const { return M.empty() ? 0 : M[0] * (d[0] / gcdl(c[0], d[0])); }

void ChainMapData::validate() const
{
    const size_t k = c.size();
    if (k == 0 || d.size() != k || M.size() != k || w.size() != k)
        throw std::invalid_argument("ChainMapData: c, d, M, w must have the same positive length");
    if (!is_divisor_string(to_big(c)) || !is_divisor_string(to_big(d)))
        throw std::invalid_argument("ChainMapData: c and d must be divisor strings");
    for (size_t i = 1; i < k; ++i) {
        const long lhs = M[i] * (d[i] / gcdl(c[i], d[i]));
        const long rhs = (M[i - 1] + w[i - 1] * gcdl(c[i - 1], d[i - 1])) * (c[i - 1] / gcdl(c[i - 1], d[i - 1]));
        if (lhs != rhs)
            throw std::invalid_argument("ChainMapData: relation " + std::to_string(i + 1) + " violated (" +
                                        std::to_string(lhs) + " != " + std::to_string(rhs) + ")");
    }
}

ChainMap chain_map_from_data(const ChainMapData& data)
{
    data.validate();
    ChainMap f;
    f.src = linear_model_string(data.c);
    f.dst = linear_model_string(data.d);
    f.shift = 0;
    f.comps.push_back(single(1, 1, identity(1).scaled(data.w0())));
    for (size_t i = 0; i < data.c.size(); ++i) {
        const long ci = data.c[i], di = data.d[i];
        std::vector<long> span(gcdl(ci, di), 0);
        span[0] = data.M[i];
        const auto odd = SpanMorphism::from_span(ci, di, span);
        f.comps.push_back(single(ci, di, odd));
        f.comps.push_back(single(ci, di, odd + i_pi_r_pi(ci, di).scaled(data.w[i])));
    }
    return f;
}

bool is_null_homotopic(const ChainMapData& data)
{
    data.validate();
    const size_t k = data.c.size();
    const auto& c = data.c;
    const auto& d = data.d;
    if (data.M[0] % gcdl(c[0], d[0])) return false;
    for (size_t i = 0; i + 1 < k; ++i) {
        const long ni = (d[i + 1] / gcdl(d[i + 1], c[i])) / (d[i] / gcdl(d[i], c[i])) * d[i];
        if ((data.M[i] + gcdl(c[i], d[i]) * data.w[i]) % ni) return false;
    }
    return data.M[k - 1] + gcdl(c[k - 1], d[k - 1]) * data.w[k - 1] == 0;
}

bool is_null_homotopic_oracle(const ChainMapData& data)
{
    const auto f = chain_map_from_data(data);
    HomComplex h(f.src, f.dst);
    return h.is_boundary(0, h.vectorize(f));
}

Int homology_action(const ChainMapData& data, int i)
{
    data.validate();
    if (i < 0 || i > static_cast<int>(data.c.size())) throw std::invalid_argument("homology_action: degree out of range");
    if (i == 0) return data.w0();
    const long ci = data.c[i - 1], di = data.d[i - 1], g = gcdl(ci, di);
    return Int(ci / g) * Int(data.M[i - 1] + data.w[i - 1] * g);
}

namespace {

IntMatrix relation_matrix(const std::vector<long>& c, const std::vector<long>& d)
{
    const size_t k = c.size();
    IntMatrix a(k - 1, 2 * k);
    for (size_t i = 1; i < k; ++i) {
        const long gp = gcdl(c[i - 1], d[i - 1]);
        a(i - 1, i) = d[i] / gcdl(c[i], d[i]);
        a(i - 1, i - 1) = -(c[i - 1] / gp);
        a(i - 1, k + i - 1) = -(c[i - 1] / gp) * gp;
    }
    return a;
}

}  // namespace

std::vector<std::vector<long>> chain_map_lattice(const std::vector<long>& c, const std::vector<long>& d)
{
    if (c.size() != d.size() || c.empty()) throw std::invalid_argument("chain_map_lattice: need equal positive lengths");
    const size_t k = c.size();
    const IntMatrix b = k == 1 ? IntMatrix::identity(2) : kernel_basis(relation_matrix(c, d));
    std::vector<std::vector<long>> out;
    for (size_t j = 0; j < b.cols(); ++j) out.push_back(to_small(b.column(j)));
    return out;
}

HomotopyGroupResult phi_image(const DivisorTuple& cin, const DivisorTuple& din)
{
    if (cin.size() != din.size()) throw std::invalid_argument("phi_image: length mismatch");
    if (cin.empty()) {
        HomotopyGroupResult r;
        r.group.rank = 1;
        r.method = HomMethod::PhiImage;
        return r;
    }
    const auto c = to_small(lcm_gcd_seq(cin)), d = to_small(lcm_gcd_seq(din));
    const size_t k = c.size();
    const auto basis = chain_map_lattice(c, d);
    // Phi in (M, w) coordinates followed by the lattice basis.
    IntMatrix phi(k + 1, 2 * k);
    std::vector<Int> q(k + 1, Int(0));
    phi(0, 0) = 1;
    q[0] = gcdl(c[0], d[0]);
    for (size_t i = 0; i < k; ++i) {
        phi(i + 1, i) = 1;
        phi(i + 1, k + i) = gcdl(c[i], d[i]);
        if (i + 1 < k) q[i + 1] = (d[i + 1] / gcdl(d[i + 1], c[i])) / (d[i] / gcdl(d[i], c[i])) * d[i];
    }
    IntMatrix bm(2 * k, k + 1);
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < 2 * k; ++i) bm(i, j) = basis[j][i];
    const IntMatrix ph = phi * bm;
    IntMatrix aug(k + 1, 2 * (k + 1));
    for (size_t i = 0; i <= k; ++i) {
        for (size_t j = 0; j <= k; ++j) aug(i, j) = ph(i, j);
        aug(i, k + 1 + i) = -q[i];
    }
    const IntMatrix ker = kernel_basis(aug);
    IntMatrix proj(k + 1, ker.cols());
    for (size_t i = 0; i <= k; ++i)
        for (size_t j = 0; j < ker.cols(); ++j) proj(i, j) = ker(i, j);

    HomotopyGroupResult r;
    r.method = HomMethod::PhiImage;
    const auto inv = smith_invariants(proj);
    r.group = AbelianGroup::from_invariants(static_cast<long>(k + 1 - inv.size()), inv);

    const auto s = smith_form(proj);
    std::vector<size_t> chosen;
    for (size_t j = s.rank; j <= k; ++j) chosen.push_back(j);
    for (size_t j = 0; j < s.rank; ++j)
        if (abs(s.diag(j)) > 1) chosen.push_back(j);
    for (size_t j : chosen) {
        ChainMapData g;
        g.c = c;
        g.d = d;
        std::vector<Int> lat(k + 1, Int(0));
        for (size_t a = 0; a <= k; ++a) lat[a] = s.Uinv(a, j);
        for (size_t i = 0; i < 2 * k; ++i) {
            Int x = 0;
            for (size_t a = 0; a <= k; ++a) x += bm(i, a) * lat[a];
            (i < k ? g.M : g.w).push_back(to_long(x));
        }
        r.generators.push_back(g);
    }
    return r;
}

}  // namespace bredon
