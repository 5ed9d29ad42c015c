#pragma once
// Brute-force values of RO(C_n)-graded cohomology from chain complexes.
//
// H^{m + lambda_d - lambda_c} at level Theta_e is [S^{lambda_c}, Sigma^m S^{lambda_d}]
// computed over the subgroup <t^e>: both sphere products are restricted,
// reduced by unit cancellation, and the homology of the Hom complex is read
// off in every degree at once.  Nothing here uses the closed forms.

#include "bredon/complexes.hpp"

#include <map>
#include <vector>

namespace bredon {

// m -> group, for every m where the Hom complex is nonzero.
std::map<int, AbelianGroup> oracle_level(long n, const std::vector<long>& c, const std::vector<long>& d, long e);

// e -> m -> group over all e | n.
std::map<long, std::map<int, AbelianGroup>> oracle_table(long n, const std::vector<long>& c, const std::vector<long>& d);

AbelianGroup oracle_group(long n, const std::vector<long>& c, const std::vector<long>& d, int m, long e);

}  // namespace bredon
