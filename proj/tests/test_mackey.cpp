#include "doctest.h"

#include "bredon/mackey.hpp"

#include <random>

using namespace bredon;

namespace {

// Naive composition through full vectors in Z[Z/c] and Z[Z/d].
std::vector<long> compose_full(const SpanMorphism& g, const SpanMorphism& f)
{
    auto x = f.full(), y = g.full();
    const long c = f.dst, d = g.dst;
    std::vector<long> z(d, 0);
    for (long r = 0; r < c; ++r)
        for (long s = 0; s < d; ++s) z[(s + r) % d] += x[r] * y[s];
    return z;
}

SpanMorphism random_map(std::mt19937& rng, long b, long c)
{
    SpanMorphism f(b, c);
    for (auto& v : f.gr) v = static_cast<long>(rng() % 7) - 3;
    return f;
}

}  // namespace

TEST_CASE("span coordinates")
{
    auto f = SpanMorphism::from_span(9, 3, {1, 2, 3});
    CHECK(f.span() == std::vector<long>{1, 2, 3});
    CHECK(f.gr == std::vector<long>{1, 3, 2});
    CHECK(span_basis(9, 15, 45).size() == 3);
    CHECK(normity(i_pi_r_pi(9, 15)) == 3);
    CHECK_THROWS_AS(SpanMorphism::from_full(3, 9, {1, 0, 0, 0, 0, 0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("composition agrees with group ring multiplication")
{
    std::mt19937 rng(5);
    const auto divs = divisors(45);
    for (int t = 0; t < 300; ++t) {
        long b = divs[rng() % divs.size()], c = divs[rng() % divs.size()], d = divs[rng() % divs.size()];
        auto f = random_map(rng, b, c), g = random_map(rng, c, d);
        CHECK(compose(g, f).full() == compose_full(g, f));
    }
    // R pi followed by I pi is the norm-like map with all-ones span.
    CHECK(compose(i_pi(5), r_pi(3)) == i_pi_r_pi(3, 5));
    CHECK(compose(r_pi(9), i_pi(9)).gr == std::vector<long>{9});
    CHECK(compose(rt_power(9, 4), rt_power(9, 5)) == identity(9));
}

TEST_CASE("unit inverse")
{
    auto u = rt_power(15, 4).scaled(-1);
    auto v = unit_inverse(u);
    REQUIRE(v);
    CHECK(compose(*v, u) == identity(15));
    CHECK(!unit_inverse(i_pi_r_pi(3, 3)));
}

TEST_CASE("levels are functorial and commute with restriction")
{
    std::mt19937 rng(9);
    const long n = 45;
    const auto divs = divisors(n);
    for (int t = 0; t < 100; ++t) {
        FreeModule a{divs[rng() % 6], divs[rng() % 6]}, b{divs[rng() % 6]}, c{divs[rng() % 6], divs[rng() % 6]};
        BlockMorphism f(a, b), g(b, c);
        for (auto& row : f.blocks)
            for (auto& x : row) x = random_map(rng, x.src, x.dst);
        for (auto& row : g.blocks)
            for (auto& x : row) x = random_map(rng, x.src, x.dst);
        auto gf = compose(g, f);
        for (long e : divs) {
            auto lhs = evaluate(gf, e).to_int();
            auto rhs = evaluate(g, e).to_int() * evaluate(f, e).to_int();
            CHECK(lhs == rhs);
            for (long e2 : divs) {
                if (e2 % e) continue;
                CHECK(evaluate(f, e2).to_int() * restriction_matrix(a, e, e2).to_int() ==
                      restriction_matrix(b, e, e2).to_int() * evaluate(f, e).to_int());
            }
            // Level e2' of the restriction to <t^e> is level e * e2' of the original.
            auto rf = restrict_morphism(f, e);
            CHECK(restrict_module(a, e) == rf.src);
            for (long e2 : divisors(n / e))
                CHECK(smith_invariants(evaluate(rf, e2)) == smith_invariants(evaluate(f, e * e2)));
        }
    }
}

TEST_CASE("named Mackey modules")
{
    CHECK(NamedMackey::zed(9, 3).same_as(NamedMackey::zed(45, 15)));
    CHECK(NamedMackey::zed(9, 9).canonical().kind == NamedMackey::Kind::Z);
    CHECK(NamedMackey::zed(9, 1).canonical().str() == "I_9");
    CHECK(NamedMackey::zmod_i(9).levels(45).at(3).str() == "Z/3");
    CHECK(NamedMackey::zmod_i(9).levels(45).at(15).str() == "Z/3");

    // Z(9;3) over C_45: index (9,f)/(3,f).
    RestrictionMeta meta;
    LevelwiseGroup g;
    for (long f : divisors(45)) {
        g[f] = AbelianGroup{1, {}};
        meta.free_index[f] = std::gcd(9L, f) / std::gcd(3L, f);
    }
    CHECK(recognize(g, meta, 45).str() == "Z(9;3)");
    LevelwiseGroup z = NamedMackey::zmod_i(15).levels(45);
    RestrictionMeta onto;
    for (long f : divisors(45)) onto.surjective[f] = true;
    CHECK(recognize(z, onto, 45).str() == "Z/I_15");
    onto.surjective[5] = false;
    CHECK(recognize(z, onto, 45).kind == NamedMackey::Kind::Unrecognized);
}
