#include "bredon/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace bredon {

IntMatrix IntMatrix::identity(size_t n)
{
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (c_ != o.r_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix p(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

std::vector<Int> IntMatrix::column(size_t j) const
{
    std::vector<Int> v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::columns(size_t j0, size_t j1) const
{
    IntMatrix m(r_, j1 - j0);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = j0; j < j1; ++j) m(i, j - j0) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const
{
    if (o.r_ != r_) throw std::invalid_argument("IntMatrix: row mismatch in hcat");
    IntMatrix m(r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

IntMatrix SmallMatrix::to_int() const
{
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i, j);
    return m;
}

std::vector<Int> normalize_torsion(std::vector<Int> diag)
{
    DivisorTuple nonunit;
    for (auto& d : diag) {
        d = abs(d);
        if (d > 1) nonunit.push_back(d);
    }
    if (nonunit.empty()) return {};
    auto chain = lcm_gcd_seq(nonunit);
    std::vector<Int> out;
    for (auto& x : chain)
        if (x > 1) out.push_back(x);
    return out;
}

namespace {

struct Overflow {};

inline void sub_mul(long& x, long a, long b)
{
    long p;
    if (__builtin_mul_overflow(a, b, &p) || __builtin_sub_overflow(x, p, &x)) throw Overflow{};
}
inline void sub_mul(Int& x, const Int& a, const Int& b) { x -= a * b; }
inline bool is_unit(long x) { return x == 1 || x == -1; }
inline bool is_unit(const Int& x) { return x == 1 || x == -1; }
inline bool is_zero(long x) { return x == 0; }
inline bool is_zero(const Int& x) { return x == 0; }

// Diagonalizes a dense mpz matrix in place (no divisibility chain) and
// returns the nonzero diagonal entries.
std::vector<Int> diagonalize(IntMatrix& a)
{
    const size_t m = a.rows(), n = a.cols();
    std::vector<Int> diag;
    std::vector<char> row_done(m, 0), col_done(n, 0);
    for (;;) {
        // Pivot: smallest nonzero absolute value among live entries.
        size_t pr = m, pc = n;
        Int best;
        for (size_t i = 0; i < m; ++i) {
            if (row_done[i]) continue;
            for (size_t j = 0; j < n; ++j) {
                if (col_done[j] || a(i, j) == 0) continue;
                if (pr == m || abs(a(i, j)) < best) {
                    best = abs(a(i, j));
                    pr = i;
                    pc = j;
                    if (best == 1) break;
                }
            }
            if (pr != m && best == 1) break;
        }
        if (pr == m) break;
        const Int p = a(pr, pc);
        bool clean = true;
        for (size_t i = 0; i < m; ++i) {
            if (i == pr || row_done[i] || a(i, pc) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, pc).get_mpz_t(), p.get_mpz_t());
            for (size_t j = 0; j < n; ++j)
                if (!col_done[j] && a(pr, j) != 0) a(i, j) -= q * a(pr, j);
            if (a(i, pc) != 0) clean = false;
        }
        for (size_t j = 0; j < n; ++j) {
            if (j == pc || col_done[j] || a(pr, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(pr, j).get_mpz_t(), p.get_mpz_t());
            for (size_t i = 0; i < m; ++i)
                if (!row_done[i] && a(i, pc) != 0) a(i, j) -= q * a(i, pc);
            if (a(pr, j) != 0) clean = false;
        }
        if (!clean) continue;  // a smaller remainder now exists; re-pivot
        diag.push_back(abs(p));
        row_done[pr] = 1;
        col_done[pc] = 1;
    }
    return diag;
}

// Eliminates unit pivots sparsely, then hands the remaining block to
// `diagonalize`.  Throws Overflow when T = long and arithmetic overflows.
template <class T>
std::vector<Int> invariants_impl(std::vector<T> a, size_t m, size_t n)
{
    auto at = [&](size_t i, size_t j) -> T& { return a[i * n + j]; };
    std::vector<char> row_done(m, 0), col_done(n, 0);
    size_t units = 0;
    std::vector<size_t> pivot_cols;
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t j = 0; j < n; ++j) {
            if (col_done[j]) continue;
            // Choose a unit in column j whose row is sparsest.
            size_t pr = m, best_nnz = n + 1;
            for (size_t i = 0; i < m; ++i) {
                if (row_done[i] || !is_unit(at(i, j))) continue;
                size_t nnz = 0;
                for (size_t k = 0; k < n; ++k)
                    if (!col_done[k] && !is_zero(at(i, k))) ++nnz;
                if (nnz < best_nnz) {
                    best_nnz = nnz;
                    pr = i;
                }
            }
            if (pr == m) continue;
            pivot_cols.clear();
            for (size_t k = 0; k < n; ++k)
                if (k != j && !col_done[k] && !is_zero(at(pr, k))) pivot_cols.push_back(k);
            const T s = at(pr, j);  // +-1, so s^{-1} = s
            for (size_t i = 0; i < m; ++i) {
                if (i == pr || row_done[i] || is_zero(at(i, j))) continue;
                T f = at(i, j);
                if (s != 1) f = -f;
                for (size_t k : pivot_cols) sub_mul(at(i, k), f, at(pr, k));
                at(i, j) = 0;
            }
            row_done[pr] = 1;
            col_done[j] = 1;
            ++units;
            progress = true;
        }
    }
    std::vector<size_t> rr, cc;
    for (size_t i = 0; i < m; ++i)
        if (!row_done[i]) rr.push_back(i);
    for (size_t j = 0; j < n; ++j)
        if (!col_done[j]) cc.push_back(j);
    IntMatrix rest(rr.size(), cc.size());
    bool any = false;
    for (size_t i = 0; i < rr.size(); ++i)
        for (size_t j = 0; j < cc.size(); ++j) {
            rest(i, j) = at(rr[i], cc[j]);
            if (rest(i, j) != 0) any = true;
        }
    std::vector<Int> diag;
    if (any) diag = diagonalize(rest);
    std::vector<Int> out(units, Int(1));
    size_t unit_tail = 0;
    for (const auto& d : diag)
        if (d == 1) ++unit_tail;
    out.insert(out.end(), unit_tail, Int(1));
    for (auto& t : normalize_torsion(diag)) out.push_back(t);
    // lcm-gcd normalization may shorten the list only by dropping units;
    // restore the rank with leading ones.
    size_t rank = units + diag.size();
    while (out.size() < rank) out.insert(out.begin(), Int(1));
    return out;
}

}  // namespace

std::vector<Int> smith_invariants(const SmallMatrix& a)
{
    try {
        return invariants_impl<long>(a.a, a.rows, a.cols);
    } catch (const Overflow&) {
        std::vector<Int> big(a.a.begin(), a.a.end());
        return invariants_impl<Int>(std::move(big), a.rows, a.cols);
    }
}

std::vector<Int> smith_invariants(const IntMatrix& a)
{
    std::vector<Int> flat;
    flat.reserve(a.rows() * a.cols());
    bool small = true;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            flat.push_back(a(i, j));
            if (!a(i, j).fits_slong_p()) small = false;
        }
    if (small) {
        SmallMatrix s(a.rows(), a.cols());
        for (size_t k = 0; k < flat.size(); ++k) s.a[k] = flat[k].get_si();
        return smith_invariants(s);
    }
    return invariants_impl<Int>(std::move(flat), a.rows(), a.cols());
}

SmithForm smith_form(const IntMatrix& input)
{
    const size_t m = input.rows(), n = input.cols();
    SmithForm sf;
    IntMatrix A = input;
    IntMatrix U = IntMatrix::identity(m), Ui = IntMatrix::identity(m), V = IntMatrix::identity(n);

    // Elementary operations, mirrored on the transforms.
    auto row_addmul = [&](size_t dst, size_t src, const Int& q) {  // row_dst -= q row_src
        for (size_t j = 0; j < n; ++j) A(dst, j) -= q * A(src, j);
        for (size_t j = 0; j < m; ++j) U(dst, j) -= q * U(src, j);
        for (size_t i = 0; i < m; ++i) Ui(i, src) += q * Ui(i, dst);
    };
    auto col_addmul = [&](size_t dst, size_t src, const Int& q) {  // col_dst -= q col_src
        for (size_t i = 0; i < m; ++i) A(i, dst) -= q * A(i, src);
        for (size_t i = 0; i < n; ++i) V(i, dst) -= q * V(i, src);
    };
    auto row_swap = [&](size_t x, size_t y) {
        if (x == y) return;
        for (size_t j = 0; j < n; ++j) std::swap(A(x, j), A(y, j));
        for (size_t j = 0; j < m; ++j) std::swap(U(x, j), U(y, j));
        for (size_t i = 0; i < m; ++i) std::swap(Ui(i, x), Ui(i, y));
    };
    auto col_swap = [&](size_t x, size_t y) {
        if (x == y) return;
        for (size_t i = 0; i < m; ++i) std::swap(A(i, x), A(i, y));
        for (size_t i = 0; i < n; ++i) std::swap(V(i, x), V(i, y));
    };
    auto row_neg = [&](size_t x) {
        for (size_t j = 0; j < n; ++j) A(x, j) = -A(x, j);
        for (size_t j = 0; j < m; ++j) U(x, j) = -U(x, j);
        for (size_t i = 0; i < m; ++i) Ui(i, x) = -Ui(i, x);
    };

    size_t t = 0;
    while (t < std::min(m, n)) {
        size_t pr = m, pc = n;
        Int best;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j)
                if (A(i, j) != 0 && (pr == m || abs(A(i, j)) < best)) {
                    best = abs(A(i, j));
                    pr = i;
                    pc = j;
                }
        if (pr == m) break;
        row_swap(t, pr);
        col_swap(t, pc);
        for (;;) {
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
                row_addmul(i, t, q);
                if (A(i, t) != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
                col_addmul(j, t, q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) {
                // Move the smallest nonzero entry of row/column t to the pivot.
                size_t bi = t, bj = t;
                Int b = abs(A(t, t));
                for (size_t i = t + 1; i < m; ++i)
                    if (A(i, t) != 0 && abs(A(i, t)) < b) { b = abs(A(i, t)); bi = i; bj = t; }
                for (size_t j = t + 1; j < n; ++j)
                    if (A(t, j) != 0 && abs(A(t, j)) < b) { b = abs(A(t, j)); bi = t; bj = j; }
                row_swap(t, bi);
                col_swap(t, bj);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            size_t bad = m;
            for (size_t i = t + 1; i < m && bad == m; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (A(i, j) % A(t, t) != 0) { bad = i; break; }
            if (bad == m) break;
            row_addmul(t, bad, Int(-1));
        }
        if (A(t, t) < 0) row_neg(t);
        ++t;
    }
    sf.rank = t;
    sf.U = std::move(U);
    sf.Uinv = std::move(Ui);
    sf.V = std::move(V);
    sf.D = std::move(A);
    return sf;
}

IntMatrix kernel_basis(const IntMatrix& a)
{
    auto sf = smith_form(a);
    return sf.V.columns(sf.rank, a.cols());
}

std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b)
{
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    auto sf = smith_form(a);
    std::vector<Int> ub(a.rows(), Int(0));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.rows(); ++j) ub[i] += sf.U(i, j) * b[j];
    std::vector<Int> y(a.cols(), Int(0));
    for (size_t i = 0; i < a.rows(); ++i) {
        if (i < sf.rank) {
            if (ub[i] % sf.D(i, i) != 0) return std::nullopt;
            y[i] = ub[i] / sf.D(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(a.cols(), Int(0));
    for (size_t i = 0; i < a.cols(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) x[i] += sf.V(i, j) * y[j];
    return x;
}

}  // namespace bredon
