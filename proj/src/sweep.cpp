#include "bredon/sweep.hpp"

#include "bredon/oracle.hpp"

#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bredon {

bool SweepReport::operator==(const SweepReport& o) const
{
    if (n != o.n || degrees != o.degrees || cells != o.cells || closed_form != o.closed_form ||
        phi_image != o.phi_image || oracle != o.oracle || named != o.named ||
        mismatches.size() != o.mismatches.size())
        return false;
    for (size_t i = 0; i < mismatches.size(); ++i) {
        const auto &a = mismatches[i], &b = o.mismatches[i];
        if (!(a.degree == b.degree) || a.level != b.level || a.what != b.what || a.expected != b.expected || a.got != b.got)
            return false;
    }
    return true;
}

std::vector<std::pair<std::vector<long>, std::vector<long>>> weight_classes(long n, int max_weight)
{
    std::vector<long> ds;
    for (long d : divisors(n))
        if (d > 1) ds.push_back(d);
    // Each divisor gets a net multiplicity in [-w, w]; enumerate by recursion.
    std::vector<std::pair<std::vector<long>, std::vector<long>>> out;
    std::vector<int> mult(ds.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == ds.size()) {
            std::vector<long> pos, neg;
            for (size_t j = 0; j < ds.size(); ++j) {
                for (int k = 0; k < mult[j]; ++k) pos.push_back(ds[j]);
                for (int k = 0; k < -mult[j]; ++k) neg.push_back(ds[j]);
            }
            out.emplace_back(pos, neg);
            return;
        }
        for (int k = -left; k <= left; ++k) {
            mult[i] = k;
            rec(i + 1, left - std::abs(k));
        }
        mult[i] = 0;
    };
    rec(0, max_weight);
    return out;
}

namespace {

struct PartReport {
    size_t degrees = 0, cells = 0, closed_form = 0, phi_image = 0, oracle = 0, named = 0;
    std::vector<SweepMismatch> mismatches;
};

PartReport run_class(const SweepOptions& opts, const std::vector<long>& pos, const std::vector<long>& neg)
{
    PartReport rep;
    const long n = opts.n;
    auto table = oracle_table(n, neg, pos);
    std::map<long, int> mult;
    for (long x : pos) mult[x] += 1;
    for (long x : neg) mult[x] -= 1;
    for (int m = -opts.max_m; m <= opts.max_m; ++m) {
        auto beta = GradingDegree::make(m, mult);
        auto res = group(n, beta);
        ++rep.degrees;
        switch (res.method) {
        case HomMethod::ClosedForm: ++rep.closed_form; break;
        case HomMethod::PhiImage: ++rep.phi_image; break;
        case HomMethod::Oracle: ++rep.oracle; break;
        }
        GroupResult ell;
        if (opts.check_ell) ell = ell_assemble(n, beta);
        LevelwiseGroup expected;
        for (long e : divisors(n)) {
            const auto& col = table[e];
            auto it = col.find(m);
            AbelianGroup want = it == col.end() ? AbelianGroup{} : it->second;
            expected[e] = want;
            ++rep.cells;
            auto fail = [&](std::string what, const AbelianGroup& got) {
                rep.mismatches.push_back({beta, e, std::move(what), want.str(), got.str(), to_string(res.method), res.reduction_log});
            };
            if (!(res.levels.at(e) == want)) fail("group", res.levels.at(e));
            if (opts.check_ell && !(ell.levels.at(e) == want)) fail("ell", ell.levels.at(e));
        }
        const auto& top = expected.at(1);
        if ((top.rank == 1) != (beta.dim() == 0) || top.rank > 1)
            rep.mismatches.push_back({beta, 1, "rank-law", "dim " + std::to_string(beta.dim()), top.str(), to_string(res.method), res.reduction_log});
        if (res.named.kind != NamedMackey::Kind::Unrecognized) {
            ++rep.named;
            if (opts.check_named && !(res.named.levels(n) == expected))
                rep.mismatches.push_back({beta, 0, "named", str(expected), res.named.str() + " " + str(res.named.levels(n)), to_string(res.method), res.reduction_log});
        }
    }
    return rep;
}

SweepReport merge(const SweepOptions& opts, std::vector<PartReport>& parts)
{
    SweepReport r;
    r.n = opts.n;
    for (auto& p : parts) {
        r.degrees += p.degrees;
        r.cells += p.cells;
        r.closed_form += p.closed_form;
        r.phi_image += p.phi_image;
        r.oracle += p.oracle;
        r.named += p.named;
        for (auto& m : p.mismatches) r.mismatches.push_back(std::move(m));
    }
    return r;
}

}  // namespace

SweepReport sweep_serial(const SweepOptions& opts)
{
    auto classes = weight_classes(opts.n, opts.max_weight);
    std::vector<PartReport> parts(classes.size());
    for (size_t i = 0; i < classes.size(); ++i) parts[i] = run_class(opts, classes[i].first, classes[i].second);
    return merge(opts, parts);
}

int configured_threads()
{
    if (const char* env = std::getenv("BREDON_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SweepReport sweep_parallel(const SweepOptions& opts)
{
    auto classes = weight_classes(opts.n, opts.max_weight);
    std::vector<PartReport> parts(classes.size());
    const long count = static_cast<long>(classes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(configured_threads())
#endif
    for (long i = 0; i < count; ++i) parts[i] = run_class(opts, classes[i].first, classes[i].second);
    return merge(opts, parts);
}

}  // namespace bredon
