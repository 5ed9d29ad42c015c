#pragma once
// Engine-versus-oracle sweep over all degrees of bounded lambda-weight.
//
// The work unit is a pair (d, c) of disjoint multisets of divisors > 1: one
// oracle table covers every m at once.  sweep_serial is the reference; the
// OpenMP driver must produce the identical report.

#include "bredon/cohomology.hpp"

#include <string>
#include <vector>

namespace bredon {

struct SweepOptions {
    long n = 9;
    int max_weight = 3;
    int max_m = 8;
    bool check_ell = false;   // also compare ell_assemble with the oracle
    bool check_named = true;  // named Mackey levels must equal the oracle
};

struct SweepMismatch {
    GradingDegree degree;
    long level = 1;
    std::string what;      // "group", "ell", "named", "rank-law"
    std::string expected;
    std::string got;
    std::string method;
    std::vector<std::string> log;
};

struct SweepReport {
    long n = 0;
    size_t degrees = 0;
    size_t cells = 0;  // degree x level comparisons
    size_t closed_form = 0, phi_image = 0, oracle = 0;
    size_t named = 0;
    std::vector<SweepMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
    bool operator==(const SweepReport& o) const;
};

// All (positive, negative) multiset pairs with total size <= max_weight.
std::vector<std::pair<std::vector<long>, std::vector<long>>> weight_classes(long n, int max_weight);

SweepReport sweep_serial(const SweepOptions& opts);
// Thread count: BREDON_THREADS if set, else the OpenMP default.
SweepReport sweep_parallel(const SweepOptions& opts);

int configured_threads();

}  // namespace bredon
