#include "bredon/arith.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bredon {

Int gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int lcm(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int gcd_of(const DivisorTuple& xs)
{
    Int g = 0;
    for (const auto& x : xs) g = gcd(g, x);
    return g;
}

Int lcm_of(const DivisorTuple& xs)
{
    Int l = 1;
    for (const auto& x : xs) l = lcm(l, x);
    return l;
}

Int colon(const Int& x, const Int& y)
{
    if (x < 1 || y < 1) throw std::invalid_argument("colon: arguments must be positive");
    return x / gcd(x, y);
}

bool is_prime(const Int& p)
{
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

std::pair<Int, Int> ell_parts(const Int& d, const Int& ell)
{
    if (!is_prime(ell)) throw std::invalid_argument("ell_parts: " + ell.get_str() + " is not prime");
    if (d < 1) throw std::invalid_argument("ell_parts: d must be positive");
    Int rest = d, part = 1;
    while (rest % ell == 0) {
        rest /= ell;
        part *= ell;
    }
    return {part, rest};
}

std::vector<long> divisors(long n)
{
    if (n < 1) throw std::invalid_argument("divisors: n must be positive");
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> prime_factors(long n)
{
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_divisor_string(const DivisorTuple& b)
{
    for (const auto& x : b)
        if (x < 1) return false;
    for (size_t i = 0; i + 1 < b.size(); ++i)
        if (b[i + 1] % b[i] != 0) return false;
    return true;
}

namespace {

// Refines the entries into a list of pairwise coprime integers > 1 such
// that every entry is a product of powers of list members.
std::vector<Int> coprime_base(const DivisorTuple& xs)
{
    std::vector<Int> base;
    for (const auto& x : xs)
        if (x > 1) base.push_back(x);
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (size_t i = 0; i < base.size() && !changed; ++i) {
            for (size_t j = i + 1; j < base.size() && !changed; ++j) {
                Int g = gcd(base[i], base[j]);
                if (g == 1) continue;
                Int a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + j);
                base.erase(base.begin() + i);
                for (const Int& y : {a, g, b})
                    if (y > 1) base.push_back(y);
                changed = true;
            }
        }
    }
    return base;
}

}  // namespace

DivisorTuple lcm_gcd_seq(const DivisorTuple& b)
{
    if (b.empty()) throw std::invalid_argument("lcm_gcd_seq: empty tuple");
    for (const auto& x : b)
        if (x < 1) throw std::invalid_argument("lcm_gcd_seq: entries must be positive");

    // Over a coprime base the j-fold lcm-gcd is computed exponentwise:
    // the j-th smallest exponent of each base element.
    const auto base = coprime_base(b);
    const size_t s = b.size();
    DivisorTuple out(s, Int(1));
    for (const auto& p : base) {
        std::vector<unsigned long> ex(s, 0);
        for (size_t i = 0; i < s; ++i) {
            Int x = b[i];
            while (x % p == 0) {
                x /= p;
                ++ex[i];
            }
        }
        std::sort(ex.begin(), ex.end());
        for (size_t j = 0; j < s; ++j) {
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), ex[j]);
            out[j] *= pw;
        }
    }
    return out;
}

DivisorTuple pairwise_distill(DivisorTuple b)
{
    if (b.empty()) throw std::invalid_argument("pairwise_distill: empty tuple");
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < b.size(); ++i) {
            for (size_t j = i + 1; j < b.size(); ++j) {
                if (b[j] % b[i] == 0) continue;
                Int g = gcd(b[i], b[j]);
                Int l = lcm(b[i], b[j]);
                b[i] = g;
                b[j] = l;
                changed = true;
            }
        }
    }
    return b;
}

PathSet allowable_paths(const DivisorTuple& c, const DivisorTuple& d, bool explicit_list)
{
    if (c.size() != d.size()) throw std::invalid_argument("allowable_paths: length mismatch");
    if (c.empty()) throw std::invalid_argument("allowable_paths: empty strings");
    const size_t k = c.size();

    // gc/gd: gcd over paths ending at c_j / d_j.  Paths reach d_j by R from
    // d_{j-1} or UR from c_{j-1}; they reach c_j by R from c_{j-1} or D from d_j.
    Int gc = 1, gd = 0;
    for (size_t j = 0; j < k; ++j) {
        Int nd = d[j] * gcd(gd, gc);
        Int nc = c[j] * gcd(gc, nd);
        gc = nc;
        gd = nd;
    }
    PathSet out{gc, gd, std::nullopt, std::nullopt};
    if (!explicit_list) return out;

    std::vector<Int> ec, ed;
    // Depth-first walk; `row` 0 = bottom (c), 1 = top (d), `col` 0..k.
    std::function<void(int, size_t, const Int&)> walk = [&](int row, size_t col, const Int& prod) {
        if (col == k) (row == 0 ? ec : ed).push_back(prod);
        if (row == 0) {
            if (col < k) walk(0, col + 1, prod * c[col]);
            if (col < k) walk(1, col + 1, prod * d[col]);
        } else {
            if (col < k) walk(1, col + 1, prod * d[col]);
            walk(0, col, prod * c[col - 1]);
        }
    };
    walk(0, 0, Int(1));
    out.end_c = std::move(ec);
    out.end_d = std::move(ed);
    return out;
}

Int Y_recursive(const DivisorTuple& c, const DivisorTuple& d)
{
    if (c.size() != d.size()) throw std::invalid_argument("Y_recursive: length mismatch");
    Int y = 1;
    for (size_t j = 0; j < c.size(); ++j) y = gcd(colon(c[j] * y, d[j]), c[j]);
    return y;
}

Int Y_path(const DivisorTuple& c, const DivisorTuple& d)
{
    if (c.size() != d.size()) throw std::invalid_argument("Y_path: length mismatch");
    if (c.empty()) return 1;
    const auto ps = allowable_paths(c, d);
    return ps.gcd_end_c / gcd(ps.gcd_end_c, ps.gcd_end_d);
}

void pad_equal(DivisorTuple& a, DivisorTuple& b)
{
    while (a.size() < b.size()) a.insert(a.begin(), Int(1));
    while (b.size() < a.size()) b.insert(b.begin(), Int(1));
}

DivisorTuple to_big(const std::vector<long>& xs)
{
    DivisorTuple out;
    out.reserve(xs.size());
    for (long x : xs) out.emplace_back(x);
    return out;
}

long to_long(const Int& x)
{
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in a long: " + x.get_str());
    return x.get_si();
}

std::vector<long> to_small(const DivisorTuple& xs)
{
    std::vector<long> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(to_long(x));
    return out;
}

std::string to_string(const DivisorTuple& xs)
{
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    os << ')';
    return os.str();
}

}  // namespace bredon
