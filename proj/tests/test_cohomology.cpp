#include "doctest.h"

#include "bredon/cohomology.hpp"
#include "bredon/oracle.hpp"
#include "bredon/sweep.hpp"

#include <random>

using namespace bredon;

namespace {

GradingDegree deg(int m, std::map<long, int> mult) { return GradingDegree::make(m, mult); }

LevelwiseGroup oracle_levels(long n, const GradingDegree& b) { return oracle_result(n, b).levels; }

GradingDegree random_degree(std::mt19937& rng, long n, int weight, int max_m)
{
    const auto divs = divisors(n);
    std::map<long, int> mult;
    for (int i = 0; i < weight; ++i) mult[divs[1 + rng() % (divs.size() - 1)]] += (rng() % 2) ? 1 : -1;
    const int m = static_cast<int>(rng() % (2 * max_m + 1)) - max_m;
    return GradingDegree::make(m, mult);
}

}  // namespace

TEST_CASE("degree arithmetic")
{
    auto b = deg(3, {{9, -2}, {45, 1}, {1, 1}});
    CHECK(b.m == 5);
    CHECK(b.dim() == 3);
    CHECK(b.str() == "5 - 2*l9 + l45");
    CHECK(deg(0, {}).str() == "0");
    CHECK(deg(0, {{3, -1}}).str() == "-l3");
    CHECK(b.restricted(9) == deg(1, {{5, 1}}));
    CHECK(b.restricted(5) == deg(5, {{9, -1}}));
    CHECK(deg(0, {{15, 1}, {9, -1}}).ell_part(3) == deg(0, {{3, 1}, {9, -1}}));
    CHECK(deg(0, {{15, 1}, {9, -1}}).ell_part(5) == deg(0, {{5, 1}}) + constant(-2));
}

TEST_CASE("classification")
{
    CHECK(classify(deg(-2, {{9, 1}})) == Region::PositiveCone);
    CHECK(classify(deg(3, {{9, -2}})) == Region::NegativeConeTorsion);
    CHECK(classify(deg(4, {{9, -2}})) == Region::IntegralEdge);
    CHECK(classify(deg(0, {{9, 1}, {3, -1}})) == Region::Irregular);
    CHECK(classify(deg(1, {{9, 1}})) == Region::Zero);
    CHECK(classify(deg(-5, {{9, 2}})) == Region::Zero);
    CHECK(classify(deg(-1, {{9, -2}})) == Region::Zero);
    CHECK(classify(deg(5, {{9, -2}})) == Region::Zero);
}

TEST_CASE("cone closed forms against the oracle")
{
    auto p = positive_group(45, to_big({15, 9}), 0);
    CHECK(p.named.str() == "Z/I_3");
    CHECK(positive_group(45, to_big({15, 9}), 1).named.kind == NamedMackey::Kind::Zero);
    CHECK(positive_group(45, to_big({15, 9}), 4).named.str() == "Z");

    auto b = to_big({3, 9, 45});
    CHECK(negative_group(45, b, 3).named.str() == "Z/I_3");
    CHECK(negative_group(45, b, 5).named.str() == "Z/I_9");
    CHECK(negative_group(45, b, 6).named.str() == "I_45");
    CHECK(negative_group(45, b, 4).named.kind == NamedMackey::Kind::Zero);
    CHECK(negative_group(45, to_big({9}), 2).named.str() == "I_9");
    for (int k = 0; k <= 4; ++k)
        if (k != 2) CHECK(negative_group(45, to_big({9}), k).levels.at(1).is_zero());

    for (int k = -1; k <= 7; ++k) {
        auto np = negative_group(45, b, k);
        CHECK(np.levels == oracle_levels(45, np.degree));
        auto pp = positive_group(45, b, k);
        CHECK(pp.levels == oracle_levels(45, pp.degree));
    }
}

TEST_CASE("group examples")
{
    for (long b : divisors(45))
        for (long c : divisors(45)) {
            auto r = group(45, lambda(c) - lambda(b));
            CHECK(r.at(1).str() == "Z");
            if (b > 1 && c > 1 && b != c) CHECK(r.named.same_as(NamedMackey::zed(b, std::gcd(b, c))));
        }
    auto x = group(9, lambda(3, 2) - lambda(9, 2));
    CHECK(x.at(1).str() == "Z+Z/3");
    auto y = group(45, deg(1, {{9, 1}, {45, 1}, {3, -1}, {15, -1}}));
    CHECK(y.levels == oracle_levels(45, y.degree));
    CHECK(group(9, deg(3, {{3, -2}})).at(1).str() == "Z/3");
    CHECK(group(45, constant(0)).at(1).str() == "Z");
    CHECK_THROWS_WITH_AS(group(4, constant(0)), "n must be odd", std::invalid_argument);
}

TEST_CASE("each reduction move preserves the group")
{
    std::mt19937 rng(7);
    int moves = 0;
    std::map<std::string, int> kinds;
    for (int trial = 0; trial < 400; ++trial) {
        const long n = trial % 3 == 0 ? 45 : (trial % 3 == 1 ? 15 : 9);
        auto b = random_degree(rng, n, 2 + static_cast<int>(rng() % 3), 8);
        auto red = irregular_reduce(n, b);
        REQUIRE(red.path.size() == red.log.size() + 1);
        for (size_t i = 0; i + 1 < red.path.size(); ++i) {
            INFO(red.log[i]);
            CHECK(oracle_levels(n, red.path[i]) == oracle_levels(n, red.path[i + 1]));
            ++moves;
            const auto& why = red.log[i];
            ++kinds[why.substr(0, why.find(' ')).substr(0, 1) + (why.find("m >= 4") != std::string::npos ? "+" : why.find("m < 0") != std::string::npos ? "-" : why.find("dim_hat") != std::string::npos ? "l" : "")];
        }
        if (classify(red.degree) == Region::Irregular) {
            CHECK(red.degree.m >= 0);
            CHECK(red.degree.m <= 3);
        }
    }
    CHECK(moves > 150);
    // chi-normalize, u with m >= 4, u with m < 0, a_n, u_ell
    for (auto k : {"c", "u+", "u-", "a", "ul"}) CHECK(kinds[k] > 0);
    CHECK(irregular_reduce(45, deg(2, {{9, 1}, {3, -1}})).log.empty());
}

TEST_CASE("vanishing wedges and the rank law at weight four")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto b = random_degree(rng, 45, 4, 10);
        auto o = oracle_levels(45, b);
        auto g = group(45, b);
        INFO(b.str());
        CHECK(g.levels == o);
        if (classify(b) == Region::Zero)
            for (const auto& [e, a] : o) CHECK(a.is_zero());
        CHECK((o.at(1).rank == 1) == (b.dim() == 0));
    }
}

TEST_CASE("equal lengths beyond two go through Phi")
{
    auto b = deg(0, {{3, 1}, {9, 1}, {45, 1}, {5, -1}, {15, -1}, {45, -1}});
    auto r = group(45, b);
    CHECK(r.levels == oracle_levels(45, b));
    auto c = deg(0, {{3, 2}, {9, 1}, {15, -1}, {45, -2}});
    auto rc = group(45, c);
    CHECK(rc.method == HomMethod::PhiImage);
    CHECK(rc.levels == oracle_levels(45, c));
}

TEST_CASE("truncation shadow for longer c at m = 0")
{
    // |tors H^{lambda_d - lambda_c}| = |tors H^{lambda_d - lambda_c'}| with c' the first |d| entries.
    std::mt19937 rng(5);
    const auto divs = divisors(45);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<long> c(2 + rng() % 2), d(1 + rng() % (c.size() - 1));
        for (auto& x : c) x = divs[1 + rng() % (divs.size() - 1)];
        for (auto& x : d) x = divs[1 + rng() % (divs.size() - 1)];
        c = to_small(lcm_gcd_seq(to_big(c)));
        d = to_small(lcm_gcd_seq(to_big(d)));
        std::vector<long> cp(c.begin(), c.begin() + static_cast<long>(d.size()));
        auto full = oracle_group(45, c, d, 0, 1);
        auto cut = oracle_group(45, cp, d, 0, 1);
        CHECK(full.torsion_order() == cut.torsion_order());
    }
}

TEST_CASE("ell-local assembly")
{
    auto b = lambda(15) - lambda(9);
    CHECK(ell_assemble(45, b).at(1).str() == "Z");
    CHECK(group(45, b).at(1).str() == "Z");
    auto t = deg(3, {{9, -1}, {45, -1}});
    CHECK(ell_assemble(45, t).levels == group(45, t).levels);
    auto p = deg(-1, {{9, 1}, {3, -1}, {45, -1}});
    CHECK(ell_assemble(45, p).levels == oracle_levels(45, p));
}

TEST_CASE("integral multiples")
{
    CHECK(integral_multiple(to_big({9}), to_big({15})) == 15 / 3);
    CHECK(integral_multiple(to_big({2, 6}), to_big({4})) == 2);
    CHECK(integral_multiple(to_big({3, 9}), to_big({3, 9})) == 1);
    CHECK(integral_multiple(to_big({45}), to_big({9})) == 1);
    CHECK(integral_multiple(to_big({9}), to_big({45})) == 5);
}

TEST_CASE("units")
{
    auto chi = lambda(3) + lambda(45) - lambda(9) - lambda(15);
    auto u = units_in_degree(chi);
    CHECK(u.has_units);
    REQUIRE(u.word.size() == 1);
    CHECK(u.word[0].b == 9);
    CHECK(u.word[0].c == 15);
    CHECK(u.str() == "+-chi(9,15)");
    CHECK_FALSE(units_in_degree(lambda(3) + lambda(15) - lambda(5) - lambda(9)).has_units);
    CHECK(units_in_degree(constant(0)).str() == "+-1");
    CHECK_FALSE(units_in_degree(lambda(9) - lambda(3)).has_units);
    CHECK_FALSE(units_in_degree(deg(-2, {{9, 1}})).has_units);
    CHECK(units_in_degree(lambda(5) - lambda(15) + constant(-2) + lambda(3)).has_units);
    CHECK(units_in_degree(lambda(5) + lambda(3) - lambda(15) - constant(2)).str() == "+-chi(3,5)^-1");
}

TEST_CASE("serial and parallel sweeps agree")
{
    SweepOptions o;
    o.n = 15;
    o.max_weight = 2;
    o.max_m = 6;
    o.check_ell = true;
    auto a = sweep_serial(o);
    auto b = sweep_parallel(o);
    CHECK(a.ok());
    CHECK(a == b);
    CHECK(a.degrees == weight_classes(15, 2).size() * 13);
}

TEST_CASE("dim 1 over C_{l^2} is not zero for negative r")
{
    // a_{l^2} gamma_l in H^{3 - 2 l_l + l_{l^2}}.  The a_{l^2} cofibre sequence
    // makes this Z/l exactly when u_{l^2}/u_l^2 is integral, i.e. Y = 1.
    for (long ell : {3L, 5L}) {
        const long n = ell * ell;
        auto b = GradingDegree::make(3, {{ell, -2}, {n, 1}});
        CHECK(b.dim() == 1);
        CHECK(integral_multiple(to_big({1, n}), to_big({ell, ell})) == 1);
        auto g = group(n, b);
        CHECK(g.at(1).str() == "Z/" + std::to_string(ell));
        CHECK(g.levels == oracle_levels(n, b));
    }
    // r >= 0: the plane is zero.
    for (int r = 0; r <= 3; ++r)
        for (int k = -4; k <= 4; ++k) {
            auto b = lambda(3, r) + lambda(9, k);
            b = b + constant(1 - b.dim());
            CHECK(group(9, b).at(1).is_zero());
        }
}
