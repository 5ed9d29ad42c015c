#include "doctest.h"

#include "bredon/frontend.hpp"

#include <random>

using namespace bredon;

TEST_CASE("degree grammar")
{
    CHECK(parse_degree("3 - 2*l9 + l45", 45) == GradingDegree::make(3, {{9, -2}, {45, 1}}));
    CHECK(parse_degree("2l3-l9", 9) == GradingDegree::make(0, {{3, 2}, {9, -1}}));
    CHECK(parse_degree("-l3", 9) == GradingDegree::make(0, {{3, -1}}));
    CHECK(parse_degree("l1 + 1", 9) == constant(3));
    CHECK(parse_degree("  0 ", 45) == constant(0));
    CHECK_THROWS_WITH(parse_degree("l7", 45), doctest::Contains("'l7'"));
    CHECK_THROWS_WITH(parse_degree("3 - 2*x9", 45), doctest::Contains("'x9'"));
    CHECK_THROWS_WITH(parse_degree("3 3", 45), doctest::Contains("'3'"));
    CHECK_THROWS_WITH(parse_degree("0", 4), "n must be odd");
    CHECK_THROWS_AS(parse_degree("", 9), std::invalid_argument);
}

TEST_CASE("printed degrees parse back")
{
    std::mt19937 rng(31);
    const auto ds = divisors(105);
    for (int trial = 0; trial < 500; ++trial) {
        std::map<long, int> mult;
        for (int i = 0; i < 4; ++i) mult[ds[rng() % ds.size()]] += static_cast<int>(rng() % 5) - 2;
        auto b = GradingDegree::make(static_cast<int>(rng() % 21) - 10, mult);
        CHECK(parse_degree(b.str(), 105) == b);
    }
}

TEST_CASE("JSON reports are stable under re-serialization")
{
    for (auto text : {"3 - 2*l3", "2*l3 - 2*l9", "0", "l3 + l9 - 4"}) {
        auto r = group(9, parse_degree(text, 9));
        auto j = group_json(r, 1);
        CHECK(nlohmann::json::parse(j.dump()) == j);
        CHECK(nlohmann::json::parse(j.dump()).dump() == j.dump());
        CHECK(j["group"]["rank"].is_number());
    }
    auto j = group_json(group(9, parse_degree("2*l3 - 2*l9", 9)), 1);
    CHECK(j["group"]["rank"] == 1);
    CHECK(j["group"]["torsion"] == nlohmann::json::array({3}));
    CHECK(j["mackey"].is_null());

    Ring ring(45);
    auto e = element_json(ring, ring.parse("3*a9*u3"));
    CHECK(e["status"] == "value");
    CHECK(e["order"] == 3);
    CHECK(element_json(ring, ring.parse("gamma9*gamma9"))["status"] == "zero");
}

TEST_CASE("chart cells depend only on their coordinates")
{
    auto spec = ChartSpec::standard(9);
    spec.r_lo = 1, spec.r_hi = 2, spec.k_lo = -2, spec.k_hi = 1, spec.m_lo = -3, spec.m_hi = 3;
    auto big = compute_chart(spec);
    auto small = spec;
    small.r_lo = small.r_hi = 2;
    small.k_lo = small.k_hi = -2;
    small.m_lo = small.m_hi = 0;
    auto one = compute_chart(small);
    CHECK(one.at(2, -2, 0).group == big.at(2, -2, 0).group);
    CHECK(big.at(2, -2, 0).symbol == "[Z+Z/3]");
    CHECK(chart_json(big) == chart_json(compute_chart(spec)));
    CHECK_THROWS_AS(big.at(0, 0, 0), std::out_of_range);
    spec.a = spec.b;
    CHECK_THROWS_AS(compute_chart(spec), std::invalid_argument);
}
