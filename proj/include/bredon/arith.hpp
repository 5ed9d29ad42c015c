#pragma once
// Divisor combinatorics for C_n gradings: gcd/lcm helpers, the colon
// operation, l-adic parts, lcm-gcd sequences and the integrality constants Y.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace bredon {

using Int = mpz_class;
using DivisorTuple = std::vector<Int>;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int gcd_of(const DivisorTuple& xs);   // gcd of an empty list is 0
Int lcm_of(const DivisorTuple& xs);   // lcm of an empty list is 1

// x:y = x/(x,y)
Int colon(const Int& x, const Int& y);

bool is_prime(const Int& p);

// (d(l), d(l^)) with d(l) the largest power of l dividing d.
std::pair<Int, Int> ell_parts(const Int& d, const Int& ell);

// Positive divisors of n in increasing order.
std::vector<long> divisors(long n);
std::vector<long> prime_factors(long n);

bool is_divisor_string(const DivisorTuple& b);

// result[j] = gcd of all (j+1)-fold lcms of entries of b.
DivisorTuple lcm_gcd_seq(const DivisorTuple& b);

// Repeatedly replaces an out-of-order pair x,y by (x,y),[x,y].
DivisorTuple pairwise_distill(DivisorTuple b);

struct PathSet {
    Int gcd_end_c;  // gcd over paths ending at c_k
    Int gcd_end_d;  // gcd over paths ending at d_k
    std::optional<std::vector<Int>> end_c;  // explicit lists, only on request
    std::optional<std::vector<Int>> end_d;
};

// Paths through the array
//        d_1 d_2 ... d_k
//     1  c_1 c_2 ... c_k
// with steps R, UR, D.  Column gcds are memoized; the explicit
// enumeration (exponential in k) is produced only when `explicit_list`.
PathSet allowable_paths(const DivisorTuple& c, const DivisorTuple& d,
                        bool explicit_list = false);

Int Y_recursive(const DivisorTuple& c, const DivisorTuple& d);
Int Y_path(const DivisorTuple& c, const DivisorTuple& d);

// Pads the shorter tuple with leading 1s so both have the same length.
void pad_equal(DivisorTuple& a, DivisorTuple& b);

DivisorTuple to_big(const std::vector<long>& xs);
std::vector<long> to_small(const DivisorTuple& xs);
long to_long(const Int& x);

std::string to_string(const DivisorTuple& xs);

}  // namespace bredon
