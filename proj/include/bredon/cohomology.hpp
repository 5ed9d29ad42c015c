#pragma once
// Groups H^beta(pt) for beta = m + sum_d mult[d] lambda_d over C_n.

#include "bredon/complexes.hpp"

#include <map>
#include <string>
#include <vector>

namespace bredon {

struct GradingDegree {
    int m = 0;
    std::map<long, int> mult;  // d > 1 -> multiplicity of lambda_d (never 0)

    // Folds lambda_1 into m and drops zero multiplicities.
    static GradingDegree make(int m, const std::map<long, int>& mult);
    // Positive part d and negative part c as sorted multisets.
    std::vector<long> positive() const;
    std::vector<long> negative() const;
    int weight() const;  // sum of |mult|
    int dim() const { return m + 2 * lambda_count(); }
    int fixed_dim() const { return m; }
    int lambda_count() const;  // sum of mult
    // Degree seen by the subgroup <t^e>: lambda_b becomes lambda_{b/(b,e)}.
    GradingDegree restricted(long e) const;
    // Replaces every index by its ell-primary part.
    GradingDegree ell_part(long ell) const;
    bool operator==(const GradingDegree& o) const = default;
    std::string str() const;  // "3 - 2*l9 + l45"
};

GradingDegree operator+(const GradingDegree& a, const GradingDegree& b);
GradingDegree operator-(const GradingDegree& a, const GradingDegree& b);
GradingDegree lambda(long d, int times = 1);
GradingDegree constant(int m);

enum class Region { PositiveCone, NegativeConeTorsion, IntegralEdge, Irregular, Zero };
std::string to_string(Region r);

Region classify(const GradingDegree& beta);

struct GroupResult {
    long n = 1;
    GradingDegree degree;
    LevelwiseGroup levels;
    NamedMackey named;
    HomMethod method = HomMethod::ClosedForm;
    std::vector<std::string> reduction_log;

    const AbelianGroup& at(long e) const { return levels.at(e); }
};

// H^{lambda_b - k} and H^{k - lambda_b}.
GroupResult positive_group(long n, const DivisorTuple& b, int k);
GroupResult negative_group(long n, const DivisorTuple& b, int k);

struct Reduction {
    GradingDegree degree;
    std::vector<std::string> log;
    std::vector<GradingDegree> path;  // every intermediate degree, input first
};

// Applies group-preserving moves until the degree is a cone degree or an
// irregular degree with 0 <= m <= 3 that no move in range applies to.
// `n` is the order of the group the degree lives over.
Reduction irregular_reduce(long n, const GradingDegree& beta);

// Dispatcher: closed forms, reductions, Phi-image, and Theta_1 oracle
// fallback on linear models.
GroupResult group(long n, const GradingDegree& beta);

// Every level straight from restricted sphere products (no closed forms).
GroupResult oracle_result(long n, const GradingDegree& beta);

// Prime-by-prime computation over C_{n(ell)} patched together.
GroupResult ell_assemble(long n, const GradingDegree& beta);

// Least r with r * u_num / u_den integral.
Int integral_multiple(const DivisorTuple& num, const DivisorTuple& den);

struct ChiFactor {
    long b, c;
    int exponent;  // +1 or -1
};

struct UnitReport {
    bool has_units = false;
    std::vector<ChiFactor> word;  // units are +- the product of these
    std::string str() const;
};

UnitReport units_in_degree(const GradingDegree& beta);

}  // namespace bredon
