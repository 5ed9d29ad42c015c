#include "doctest.h"

#include "bredon/arith.hpp"
#include "bredon/linalg.hpp"

#include <algorithm>
#include <random>

using namespace bredon;

namespace {

// j-th smallest exponent of every prime, straight from trial division.
DivisorTuple lcm_gcd_by_factoring(const std::vector<long>& b)
{
    std::vector<long> primes;
    for (long x : b)
        for (long p : prime_factors(x))
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::vector<long> out(b.size(), 1);
    for (long p : primes) {
        std::vector<int> ex;
        for (long x : b) {
            int e = 0;
            for (; x % p == 0; x /= p) ++e;
            ex.push_back(e);
        }
        std::sort(ex.begin(), ex.end());
        for (size_t j = 0; j < b.size(); ++j)
            for (int i = 0; i < ex[j]; ++i) out[j] *= p;
    }
    return to_big(out);
}

}  // namespace

TEST_CASE("colon and parts")
{
    CHECK(colon(12, 18) == 2);
    CHECK(colon(9, 3) == 3);
    CHECK(colon(5, 10) == 1);
    auto [p, r] = ell_parts(Int(360), Int(3));
    CHECK(p == 9);
    CHECK(r == 40);
    CHECK_THROWS_AS(ell_parts(Int(10), Int(4)), std::invalid_argument);
}

TEST_CASE("lcm_gcd_seq")
{
    CHECK(lcm_gcd_seq(to_big({15, 9, 18})) == to_big({3, 9, 90}));
    CHECK(lcm_gcd_seq(to_big({7})) == to_big({7}));
    CHECK_THROWS_AS(lcm_gcd_seq({}), std::invalid_argument);
    std::mt19937 rng(7);
    for (int t = 0; t < 300; ++t) {
        std::vector<long> b(1 + rng() % 5);
        for (auto& x : b) x = 1 + rng() % 400;
        auto want = lcm_gcd_by_factoring(b);
        CHECK(lcm_gcd_seq(to_big(b)) == want);
        CHECK(pairwise_distill(to_big(b)) == want);
    }
}

TEST_CASE("Y on small strings")
{
    CHECK(Y_recursive(to_big({1, 4}), to_big({2, 6})) == 2);
    CHECK(Y_path(to_big({1, 4}), to_big({2, 6})) == 2);
    CHECK(Y_recursive({}, {}) == 1);
    CHECK(Y_path({}, {}) == 1);
    // k = 1 reduces to c : d.
    CHECK(Y_path(to_big({9}), to_big({3})) == 3);
    CHECK(Y_path(to_big({3}), to_big({9})) == 1);
}

TEST_CASE("explicit path list matches the gcd summary")
{
    std::mt19937 rng(11);
    const std::vector<long> divs = divisors(105);
    for (int t = 0; t < 100; ++t) {
        size_t k = 1 + rng() % 4;
        std::vector<long> c(k), d(k);
        for (auto& x : c) x = divs[rng() % divs.size()];
        for (auto& x : d) x = divs[rng() % divs.size()];
        auto ps = allowable_paths(to_big(c), to_big(d), true);
        REQUIRE(ps.end_c);
        CHECK(gcd_of(*ps.end_c) == ps.gcd_end_c);
        CHECK(gcd_of(*ps.end_d) == ps.gcd_end_d);
    }
}

TEST_CASE("smith forms")
{
    IntMatrix a(3, 3);
    long v[9] = {2, 4, 4, -6, 6, 12, 10, -4, -16};
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = v[i];
    CHECK(smith_invariants(a) == to_big({2, 6, 12}));
    auto s = smith_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.U * s.Uinv == IntMatrix::identity(3));
    CHECK(s.diag(0) == 2);
    CHECK(s.diag(1) == 6);
    CHECK(s.diag(2) == 12);

    std::mt19937 rng(3);
    for (int t = 0; t < 200; ++t) {
        size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        SmallMatrix m(r, c);
        for (auto& x : m.a) x = (rng() % 3 == 0) ? static_cast<long>(rng() % 21) - 10 : 0;
        auto inv = smith_invariants(m);
        auto sf = smith_form(m.to_int());
        CHECK(sf.U * m.to_int() * sf.V == sf.D);
        REQUIRE(inv.size() == sf.rank);
        for (size_t i = 0; i < sf.rank; ++i) CHECK(abs(sf.diag(i)) == inv[i]);
        auto k = kernel_basis(m.to_int());
        CHECK(k.cols() == c - sf.rank);
        CHECK((m.to_int() * k).is_zero());
    }
}

TEST_CASE("solve")
{
    IntMatrix a(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 3;
    auto x = solve(a, to_big({4, 9}));
    REQUIRE(x);
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK(!solve(a, to_big({1, 0})));
}
