#include "bredon/cohomology.hpp"

#include "bredon/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bredon {

// ---------------------------------------------------------------- degrees

GradingDegree GradingDegree::make(int m, const std::map<long, int>& mult)
{
    GradingDegree g;
    g.m = m;
    for (auto [d, k] : mult) {
        if (d < 1) throw std::invalid_argument("lambda index must be positive");
        if (d == 1) {
            g.m += 2 * k;
            continue;
        }
        if (k != 0) g.mult[d] += k;
    }
    std::erase_if(g.mult, [](const auto& kv) { return kv.second == 0; });
    return g;
}

std::vector<long> GradingDegree::positive() const
{
    std::vector<long> out;
    for (auto [d, k] : mult)
        for (int i = 0; i < k; ++i) out.push_back(d);
    return out;
}

std::vector<long> GradingDegree::negative() const
{
    std::vector<long> out;
    for (auto [d, k] : mult)
        for (int i = 0; i < -k; ++i) out.push_back(d);
    return out;
}

int GradingDegree::weight() const
{
    int w = 0;
    for (auto [d, k] : mult) w += std::abs(k);
    return w;
}

int GradingDegree::lambda_count() const
{
    int w = 0;
    for (auto [d, k] : mult) w += k;
    return w;
}

GradingDegree GradingDegree::restricted(long e) const
{
    std::map<long, int> out;
    for (auto [d, k] : mult) out[d / std::gcd(d, e)] += k;
    return make(m, out);
}

GradingDegree GradingDegree::ell_part(long ell) const
{
    std::map<long, int> out;
    for (auto [d, k] : mult) {
        long p = 1;
        for (long x = d; x % ell == 0; x /= ell) p *= ell;
        out[p] += k;
    }
    return make(m, out);
}

std::string GradingDegree::str() const
{
    std::ostringstream os;
    bool first = true;
    if (m != 0 || mult.empty()) {
        os << m;
        first = false;
    }
    for (auto [d, k] : mult) {
        int a = std::abs(k);
        if (first)
            os << (k < 0 ? "-" : "");
        else
            os << (k < 0 ? " - " : " + ");
        if (a != 1) os << a << "*";
        os << "l" << d;
        first = false;
    }
    return os.str();
}

GradingDegree operator+(const GradingDegree& a, const GradingDegree& b)
{
    auto mult = a.mult;
    for (auto [d, k] : b.mult) mult[d] += k;
    return GradingDegree::make(a.m + b.m, mult);
}

GradingDegree operator-(const GradingDegree& a, const GradingDegree& b)
{
    auto mult = a.mult;
    for (auto [d, k] : b.mult) mult[d] -= k;
    return GradingDegree::make(a.m - b.m, mult);
}

GradingDegree lambda(long d, int times) { return GradingDegree::make(0, {{d, times}}); }
GradingDegree constant(int m) { return GradingDegree::make(m, {}); }

std::string to_string(Region r)
{
    switch (r) {
    case Region::PositiveCone: return "PositiveCone";
    case Region::NegativeConeTorsion: return "NegativeConeTorsion";
    case Region::IntegralEdge: return "IntegralEdge";
    case Region::Irregular: return "Irregular";
    case Region::Zero: return "Zero";
    }
    return "?";
}

Region classify(const GradingDegree& beta)
{
    bool any_pos = false, any_neg = false;
    for (auto [d, k] : beta.mult) (k > 0 ? any_pos : any_neg) = true;
    int w = beta.weight();
    if (!any_neg) {
        if (beta.m > 0 || beta.m < -2 * w) return Region::Zero;
        return Region::PositiveCone;
    }
    if (!any_pos) {
        if (beta.m > 2 * w || beta.m < 0) return Region::Zero;
        return beta.m == 2 * w ? Region::IntegralEdge : Region::NegativeConeTorsion;
    }
    return Region::Irregular;
}

// ---------------------------------------------------------------- cones

namespace {

GroupResult from_named(long n, GradingDegree degree, NamedMackey named, std::string why)
{
    GroupResult r;
    r.n = n;
    r.degree = std::move(degree);
    r.named = named.canonical();
    r.levels = r.named.levels(n);
    r.method = HomMethod::ClosedForm;
    r.reduction_log.push_back(std::move(why));
    return r;
}

GradingDegree degree_of_strings(int m, const std::vector<long>& d, const std::vector<long>& c)
{
    std::map<long, int> mult;
    for (long x : d) mult[x] += 1;
    for (long x : c) mult[x] -= 1;
    return GradingDegree::make(m, mult);
}

NamedMackey positive_named(const DivisorTuple& b, int k)
{
    const int s = static_cast<int>(b.size());
    if (k == 2 * s) return NamedMackey::z();
    if (k < 0 || k > 2 * s || k % 2 != 0) return NamedMackey::zero();
    auto seq = lcm_gcd_seq(b);
    return NamedMackey::zmod_i(to_long(seq[k / 2]));
}

NamedMackey negative_named(const DivisorTuple& b, int k)
{
    const int s = static_cast<int>(b.size());
    auto seq = lcm_gcd_seq(b);
    if (s > 0 && k == 2 * s) return NamedMackey::ideal(to_long(seq[s - 1]));
    if (s == 0 && k == 0) return NamedMackey::z();
    if (k % 2 == 1 && k >= 3 && k <= 2 * s - 1) return NamedMackey::zmod_i(to_long(seq[(k - 1) / 2 - 1]));
    return NamedMackey::zero();
}

}  // namespace

GroupResult positive_group(long n, const DivisorTuple& b, int k)
{
    return from_named(n, degree_of_strings(-k, to_small(b), {}), positive_named(b, k),
                      "positive cone closed form");
}

GroupResult negative_group(long n, const DivisorTuple& b, int k)
{
    return from_named(n, degree_of_strings(k, {}, to_small(b)), negative_named(b, k),
                      "negative cone closed form");
}

// ---------------------------------------------------------------- reduction

namespace {

std::vector<long> associated(const std::vector<long>& xs)
{
    if (xs.empty()) return {};
    return to_small(lcm_gcd_seq(to_big(xs)));
}

// Rewrites both sides as divisor strings (multiplication by chi-units) and
// folds lambda_1 into the integer part.
GradingDegree chi_normalize(const GradingDegree& beta)
{
    return degree_of_strings(beta.m, associated(beta.positive()), associated(beta.negative()));
}

int dim_ell_hat(const GradingDegree& beta, long ell)
{
    int s = beta.m;
    for (auto [d, k] : beta.mult)
        if (d % ell != 0) s += 2 * k;
    return s;
}

bool in(int x, std::initializer_list<int> xs) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

}  // namespace

Reduction irregular_reduce(long n, const GradingDegree& beta)
{
    Reduction r;
    r.degree = beta;
    r.path.push_back(beta);
    auto step = [&r](const GradingDegree& next, std::string why) {
        r.log.push_back(std::move(why));
        r.degree = next;
        r.path.push_back(next);
    };
    for (;;) {
        auto normal = chi_normalize(r.degree);
        if (!(normal == r.degree)) step(normal, "chi-normalize " + r.degree.str() + " -> " + normal.str());
        const GradingDegree b = r.degree;
        auto region = classify(b);
        if (region != Region::Irregular) break;
        auto d = b.positive();
        auto c = b.negative();

        if (b.m >= 4) {
            auto next = b + lambda(c.front()) - constant(2);
            step(next, "u_" + std::to_string(c.front()) + " iso (m >= 4): " + b.str() + " -> " + next.str());
            continue;
        }
        if (b.m < 0) {
            auto next = b - lambda(d.front()) + constant(2);
            step(next, "u_" + std::to_string(d.front()) + " iso (m < 0): " + b.str() + " -> " + next.str());
            continue;
        }

        const int dim = b.dim();
        if (b.mult.count(n) && b.mult.at(n) > 0 && !in(dim, {0, 1, 2})) {
            auto next = b - lambda(n);
            step(next, "a_" + std::to_string(n) + " iso (dim " + std::to_string(dim) + "): " + b.str() + " -> " + next.str());
            continue;
        }
        if (b.mult.count(n) && b.mult.at(n) < 0 && !in(dim, {-2, -1, 0})) {
            auto next = b + lambda(n);
            step(next, "a_" + std::to_string(n) + " iso (dim " + std::to_string(dim) + "): " + b.str() + " -> " + next.str());
            continue;
        }

        bool moved = false;
        for (auto [x, k] : b.mult) {
            if (!is_prime(Int(x))) continue;
            int dh = dim_ell_hat(b, x);
            if (k < 0 && !in(dh, {2, 3})) {
                auto next = b + lambda(x) - constant(2);
                step(next, "u_" + std::to_string(x) + " iso (dim_hat " + std::to_string(dh) + "): " + b.str() + " -> " + next.str());
                moved = true;
                break;
            }
            if (k > 0 && !in(dh, {0, 1})) {
                auto next = b - lambda(x) + constant(2);
                step(next, "u_" + std::to_string(x) + " iso (dim_hat " + std::to_string(dh + 2) + "): " + b.str() + " -> " + next.str());
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return r;
}

// ---------------------------------------------------------------- dispatcher

namespace {

struct LevelValue {
    AbelianGroup group;
    HomMethod method = HomMethod::ClosedForm;
    std::vector<std::string> log;
    GradingDegree reduced;
};

AbelianGroup theta1(const NamedMackey& m, long n) { return m.levels(n).at(1); }

AbelianGroup twofold(const std::vector<long>& c, const std::vector<long>& d)
{
    Int t = gcd(Int(c[0]), Int(d[0]) * d[1]) / gcd(Int(c[0]), Int(d[1]));
    if (t == 1) return AbelianGroup::from_invariants(1, {});
    return AbelianGroup::from_invariants(1, {t});
}

// Theta_1 value of H^{lambda_d - lambda_c} for equal lengths.
AbelianGroup equal_length(const std::vector<long>& c, const std::vector<long>& d, LevelValue& out)
{
    if (c.size() == 1) {
        out.log.push_back("equal length 1: Z");
        return AbelianGroup::from_invariants(1, {});
    }
    if (c.size() == 2) {
        out.log.push_back("equal length 2: Z + Z/((c1,d1 d2)/(c1,d2))");
        return twofold(c, d);
    }
    out.method = std::max(out.method, HomMethod::PhiImage);
    out.log.push_back("equal length " + std::to_string(c.size()) + ": image of Phi");
    return phi_image(to_big(c), to_big(d)).group;
}

LevelValue theta1_value(long n, const GradingDegree& beta)
{
    LevelValue out;
    auto red = irregular_reduce(n, beta);
    out.log = red.log;
    out.reduced = red.degree;
    const auto& b = red.degree;
    auto d = b.positive();
    auto c = b.negative();
    if (c.empty()) {
        out.group = theta1(positive_named(to_big(d), -b.m), n);
        out.log.push_back("positive cone closed form");
        return out;
    }
    if (d.empty()) {
        out.group = theta1(negative_named(to_big(c), b.m), n);
        out.log.push_back("negative cone closed form");
        return out;
    }
    if (b.m % 2 == 0) {
        std::vector<long> dp(b.m / 2, 1);
        dp.insert(dp.end(), d.begin(), d.end());
        if (b.m > 0) out.log.push_back("pad d with " + std::to_string(b.m / 2) + " lambda_1");
        if (c.size() == dp.size()) {
            out.group = equal_length(c, dp, out);
            return out;
        }
        if (c.size() > dp.size()) {
            std::vector<long> cp(c.begin(), c.begin() + static_cast<long>(dp.size()));
            out.log.push_back("longer c at m = 0: torsion of the truncated degree");
            auto g = equal_length(cp, dp, out);
            g.rank = 0;
            out.group = g;
            return out;
        }
    }
    out.method = HomMethod::Oracle;
    out.log.push_back("linear-model oracle at Theta_1");
    out.group = hom_group(linear_model_string(c), linear_model_string(d), b.m).group;
    return out;
}

// Name of the Mackey functor at a reduced degree when a closed form gives one.
NamedMackey named_for(const GradingDegree& b)
{
    auto d = b.positive();
    auto c = b.negative();
    switch (classify(b)) {
    case Region::Zero: return NamedMackey::zero();
    case Region::PositiveCone: return positive_named(to_big(d), -b.m);
    case Region::NegativeConeTorsion:
    case Region::IntegralEdge: return negative_named(to_big(c), b.m);
    case Region::Irregular:
        if (b.m == 0 && c.size() == 1 && d.size() == 1) return NamedMackey::zed(c[0], std::gcd(c[0], d[0]));
        break;
    }
    return NamedMackey::unrecognized({});
}

}  // namespace

GroupResult group(long n, const GradingDegree& beta)
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
    for (auto [d, k] : beta.mult)
        if (n % d != 0) throw std::invalid_argument("l" + std::to_string(d) + " does not divide n");

    GroupResult r;
    r.n = n;
    r.degree = beta;
    GradingDegree top_reduced;
    for (long e : divisors(n)) {
        auto v = theta1_value(n / e, beta.restricted(e));
        r.levels[e] = v.group;
        r.method = std::max(r.method, v.method);
        if (e == 1) {
            r.reduction_log = v.log;
            top_reduced = v.reduced;
        }
    }
    bool all_zero = std::all_of(r.levels.begin(), r.levels.end(), [](const auto& kv) { return kv.second.is_zero(); });
    auto named = all_zero ? NamedMackey::zero() : named_for(top_reduced);
    if (named.kind != NamedMackey::Kind::Unrecognized && named.canonical().levels(n) == r.levels)
        r.named = named.canonical();
    else
        r.named = NamedMackey::unrecognized(r.levels);
    return r;
}

GroupResult oracle_result(long n, const GradingDegree& beta)
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
    GroupResult r;
    r.n = n;
    r.degree = beta;
    r.method = HomMethod::Oracle;
    auto table = oracle_table(n, beta.negative(), beta.positive());
    for (long e : divisors(n)) {
        const auto& col = table[e];
        auto it = col.find(beta.m);
        r.levels[e] = it == col.end() ? AbelianGroup{} : it->second;
    }
    bool all_zero = std::all_of(r.levels.begin(), r.levels.end(), [](const auto& kv) { return kv.second.is_zero(); });
    r.named = all_zero ? NamedMackey::zero() : NamedMackey::unrecognized(r.levels);
    r.reduction_log.push_back("sphere-product oracle at every level");
    return r;
}

GroupResult ell_assemble(long n, const GradingDegree& beta)
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
    GroupResult r;
    r.n = n;
    r.degree = beta;
    for (long e : divisors(n)) {
        const long ne = n / e;
        const auto be = beta.restricted(e);
        std::vector<Int> torsion;
        for (long ell : prime_factors(ne)) {
            long part = 1;
            for (long x = ne; x % ell == 0; x /= ell) part *= ell;
            auto v = theta1_value(part, be.ell_part(ell));
            r.method = std::max(r.method, v.method);
            if (e == 1) r.reduction_log.push_back("ell = " + std::to_string(ell) + ": " + be.ell_part(ell).str() + " over C_" + std::to_string(part) + " is " + v.group.str());
            for (const auto& t : v.group.torsion) {
                Int p = 1, x = t;
                while (x % ell == 0) {
                    x /= ell;
                    p *= ell;
                }
                if (p > 1) torsion.push_back(p);
            }
        }
        long rank = (be.dim() == 0) ? 1 : 0;
        if (ne == 1) rank = be.m == 0 ? 1 : 0;
        r.levels[e] = AbelianGroup::from_invariants(rank, torsion);
    }
    bool all_zero = std::all_of(r.levels.begin(), r.levels.end(), [](const auto& kv) { return kv.second.is_zero(); });
    r.named = all_zero ? NamedMackey::zero() : NamedMackey::unrecognized(r.levels);
    return r;
}

// ---------------------------------------------------------------- integrality and units

Int integral_multiple(const DivisorTuple& num, const DivisorTuple& den)
{
    auto d = num.empty() ? DivisorTuple{} : lcm_gcd_seq(num);
    auto c = den.empty() ? DivisorTuple{} : lcm_gcd_seq(den);
    pad_equal(c, d);
    if (c.empty()) return 1;
    return Y_recursive(c, d);
}

namespace {

// Turns a multiset into a divisor string by gcd/lcm swaps, recording each pair.
std::vector<long> distill_logged(std::vector<long> xs, std::vector<std::pair<long, long>>& moves)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < xs.size() && !changed; ++i)
            for (size_t j = i + 1; j < xs.size() && !changed; ++j) {
                long x = xs[i], y = xs[j];
                if (y % x == 0 || x % y == 0) continue;
                moves.emplace_back(std::min(x, y), std::max(x, y));
                xs[i] = std::gcd(x, y);
                xs[j] = std::lcm(x, y);
                changed = true;
            }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace

std::string UnitReport::str() const
{
    if (!has_units) return "no homogeneous units";
    if (word.empty()) return "+-1";
    std::string s = "+-";
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) s += "*";
        s += "chi(" + std::to_string(word[i].b) + "," + std::to_string(word[i].c) + ")";
        if (word[i].exponent < 0) s += "^-1";
    }
    return s;
}

UnitReport units_in_degree(const GradingDegree& beta)
{
    UnitReport r;
    if (beta.dim() != 0) return r;
    auto d = beta.positive();
    auto c = beta.negative();
    const int j = beta.m / 2;
    for (int i = 0; i < j; ++i) d.push_back(1);
    for (int i = 0; i < -j; ++i) c.push_back(1);
    std::vector<std::pair<long, long>> dm, cm;
    auto ds = distill_logged(d, dm);
    auto cs = distill_logged(c, cm);
    if (ds != cs) return r;
    r.has_units = true;
    for (auto [x, y] : cm) r.word.push_back({x, y, +1});
    for (auto [x, y] : dm) r.word.push_back({x, y, -1});
    return r;
}

}  // namespace bredon
