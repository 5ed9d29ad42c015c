#include "bredon/oracle.hpp"

namespace bredon {

namespace {

FreeComplex restricted_product(const std::vector<long>& bs, long n, long e)
{
    FreeComplex c;
    c.terms = {{1}};
    for (long b : bs) c = reduce(box(c, restrict_complex(sphere(b, n), e)));
    return c;
}

}  // namespace

std::map<int, AbelianGroup> oracle_level(long n, const std::vector<long>& c, const std::vector<long>& d, long e)
{
    if (n < 1 || e < 1 || n % e) throw std::invalid_argument("oracle_level: level must divide n");
    HomComplex h(restricted_product(c, n, e), restricted_product(d, n, e));
    std::map<int, AbelianGroup> out;
    for (int p = h.min_degree(); p <= h.max_degree(); ++p) out[-p] = h.homology(p);
    return out;
}

std::map<long, std::map<int, AbelianGroup>> oracle_table(long n, const std::vector<long>& c, const std::vector<long>& d)
{
    std::map<long, std::map<int, AbelianGroup>> out;
    for (long e : divisors(n)) out[e] = oracle_level(n, c, d, e);
    return out;
}

AbelianGroup oracle_group(long n, const std::vector<long>& c, const std::vector<long>& d, int m, long e)
{
    const auto lv = oracle_level(n, c, d, e);
    auto it = lv.find(m);
    return it == lv.end() ? AbelianGroup{} : it->second;
}

}  // namespace bredon
