#pragma once
// Support code for the bredon command-line tool: the degree grammar, JSON
// reports and charts of two-parameter slices of the grading.

#include "bredon/cohomology.hpp"
#include "bredon/ring.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace bredon {

// "3 - 2*l9 + l45", "2l3-l9", "-l3", "0".  l1 folds into the integer part.
// Throws std::invalid_argument naming the offending token.
GradingDegree parse_degree(const std::string& text, long n);

nlohmann::json group_json(const GroupResult& r, long level);
std::string group_text(const GroupResult& r, long level);

nlohmann::json element_json(const Ring& ring, const SymbolicElement& e);

// Cells H^{r*l_a + k*l_b + m} over C_n for (r, k, m) in the given box.
struct ChartSpec {
    long n = 9;
    long a = 3, b = 9;
    int r_lo = 0, r_hi = 3;
    int k_lo = -3, k_hi = 3;
    int m_lo = -8, m_hi = 8;

    // a = smallest prime factor, b = n.
    static ChartSpec standard(long n);
    void validate() const;
};

struct ChartCell {
    int r = 0, k = 0, m = 0;
    GradingDegree degree;
    int dim = 0;
    AbelianGroup group;
    Region region = Region::Zero;
    std::string symbol;  // ".", "[Z]", "[Z/3]", "[Z+Z/3]", ...
};

struct Chart {
    ChartSpec spec;
    std::vector<ChartCell> cells;  // r-major, then k, then m
    const ChartCell& at(int r, int k, int m) const;
};

std::string chart_symbol(const AbelianGroup& g);
Chart compute_chart(const ChartSpec& spec);
std::string render_text(const Chart& c);
nlohmann::json chart_json(const Chart& c);

}  // namespace bredon
