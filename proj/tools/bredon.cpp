// bredon: query the RO(C_n)-graded cohomology of a point with constant
// integral coefficients.
//
//   bredon group    --n 45 --deg "3 - 2*l9 + l45" [--level 3] [--json]
//   bredon oracle   --n 9  --deg "2*l3 - 2*l9"
//   bredon integral --n 45 --num 45 --den 9        (or --raw without --n)
//   bredon mult     --n 45 "u[9:3]" "u[3:9]"
//   bredon chart    --n 9 [--format text|json] [--r 0:3 --k -3:3 --m -8:8]
//   bredon verify   --n 9 --max-weight 3 --max-m 8
//
// BREDON_THREADS caps the OpenMP worker count for chart and verify.

#include "bredon/frontend.hpp"
#include "bredon/sweep.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace bredon;

namespace {

struct Range {
    int lo, hi;
};

Range parse_range(const std::string& s)
{
    auto colon = s.find(':', s.empty() ? 0 : 1);
    try {
        if (colon == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad range '" + s + "' (expected LO:HI)");
    }
}

void require_odd(long n)
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
}

void check_divisors(long n, const std::vector<long>& xs)
{
    for (long x : xs)
        if (x < 1 || n % x != 0) throw std::invalid_argument(std::to_string(x) + " does not divide n = " + std::to_string(n));
}

std::string join(const std::vector<long>& xs)
{
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bredon cohomology of a point for odd cyclic groups"};
    app.require_subcommand(1);

    long n = 0, level = 1;
    std::string deg_text;
    bool json = false, raw = false;
    std::vector<long> num, den;
    std::vector<std::string> exprs;
    std::string format = "text", r_range = "0:3", k_range = "-3:3", m_range = "-8:8";
    long axis_a = 0, axis_b = 0;
    int max_weight = 3, max_m = 8;

    auto add_group_opts = [&](CLI::App* c) {
        c->add_option("--n", n, "order of the cyclic group (odd)")->required();
        c->add_option("--deg", deg_text, "degree, e.g. \"3 - 2*l9 + l45\"")->required();
        c->add_option("--level", level, "subgroup level e | n (default 1)");
        c->add_flag("--json", json, "emit JSON");
    };

    auto* g = app.add_subcommand("group", "group in one degree, closed forms first");
    add_group_opts(g);
    auto* o = app.add_subcommand("oracle", "group in one degree, forcing the chain-level oracle");
    add_group_opts(o);

    auto* in = app.add_subcommand("integral", "least multiple making u_num/u_den integral");
    in->add_option("--n", n, "order of the cyclic group (odd)");
    in->add_option("--num", num, "numerator indices")->delimiter(',')->required();
    in->add_option("--den", den, "denominator indices")->delimiter(',')->required();
    in->add_flag("--raw", raw, "pure arithmetic; skip the divisor check");
    in->add_flag("--json", json, "emit JSON");

    auto* mu = app.add_subcommand("mult", "normalize a product of named classes");
    mu->add_option("--n", n, "order of the cyclic group (odd)")->required();
    mu->add_option("expr", exprs, "one product expression, or two factors")->required()->expected(1, 2);
    mu->add_flag("--json", json, "emit JSON");

    auto* ch = app.add_subcommand("chart", "table of groups on a two-parameter slice");
    ch->add_option("--n", n, "order of the cyclic group (odd)")->required();
    ch->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    ch->add_option("--a", axis_a, "divisor on the r axis (default: smallest prime of n)");
    ch->add_option("--b", axis_b, "divisor on the k axis (default: n)");
    ch->add_option("--r", r_range, "r range LO:HI");
    ch->add_option("--k", k_range, "k range LO:HI");
    ch->add_option("--m", m_range, "m range LO:HI");

    auto* ve = app.add_subcommand("verify", "closed forms against the oracle on a box of degrees");
    ve->add_option("--n", n, "order of the cyclic group (odd)")->required();
    ve->add_option("--max-weight", max_weight, "maximum total lambda weight");
    ve->add_option("--max-m", max_m, "maximum |m|");
    ve->add_flag("--json", json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed() || o->parsed()) {
            require_odd(n);
            auto beta = parse_degree(deg_text, n);
            if (level < 1 || n % level != 0) throw std::invalid_argument("level " + std::to_string(level) + " does not divide n");
            auto r = g->parsed() ? group(n, beta) : oracle_result(n, beta);
            if (json)
                std::cout << group_json(r, level).dump(2) << "\n";
            else
                std::cout << group_text(r, level);
            return 0;
        }
        if (in->parsed()) {
            if (!raw) {
                if (n == 0) throw std::invalid_argument("--n is required unless --raw is given");
                require_odd(n);
                check_divisors(n, num);
                check_divisors(n, den);
            }
            const Int k = integral_multiple(to_big(num), to_big(den));
            if (json) {
                nlohmann::json j = {{"num", num}, {"den", den}, {"multiple", k.fits_slong_p() ? nlohmann::json(k.get_si()) : nlohmann::json(k.get_str())},
                                    {"integral", k == 1}};
                if (!raw) j["n"] = n;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "u_(" << join(num) << ")/u_(" << join(den) << "): least integral multiple " << k.get_str()
                          << (k == 1 ? " (integral)" : " (not integral)") << "\n";
            }
            return 0;
        }
        if (mu->parsed()) {
            Ring ring(n);
            SymbolicElement e = ring.parse(exprs[0]);
            if (exprs.size() == 2) e = ring.multiply(e, ring.parse(exprs[1]));
            if (json) {
                std::cout << element_json(ring, e).dump(2) << "\n";
            } else {
                if (e.is_unknown())
                    std::cout << "UNKNOWN: " << e.reason << "\n";
                else if (e.is_zero())
                    std::cout << "ZERO\n";
                else
                    std::cout << to_string(e) << "   in degree " << ring.degree_of(e).str() << "\n";
                for (const auto& rule : e.rules) std::cout << "  by: " << rule << "\n";
            }
            return 0;
        }
        if (ch->parsed()) {
            auto spec = ChartSpec::standard(n);
            if (axis_a) spec.a = axis_a;
            if (axis_b) spec.b = axis_b;
            auto r = parse_range(r_range), k = parse_range(k_range), m = parse_range(m_range);
            spec.r_lo = r.lo, spec.r_hi = r.hi, spec.k_lo = k.lo, spec.k_hi = k.hi, spec.m_lo = m.lo, spec.m_hi = m.hi;
            auto chart = compute_chart(spec);
            if (format == "json")
                std::cout << chart_json(chart).dump(2) << "\n";
            else
                std::cout << render_text(chart);
            return 0;
        }
        if (ve->parsed()) {
            require_odd(n);
            SweepOptions opts;
            opts.n = n;
            opts.max_weight = max_weight;
            opts.max_m = max_m;
            opts.check_ell = true;
            auto rep = sweep_parallel(opts);
            if (json) {
                nlohmann::json mism = nlohmann::json::array();
                for (const auto& x : rep.mismatches)
                    mism.push_back({{"degree", x.degree.str()}, {"level", x.level}, {"what", x.what}, {"expected", x.expected},
                                    {"got", x.got}, {"method", x.method}, {"reductions", x.log}});
                std::cout << nlohmann::json{{"n", n}, {"degrees", rep.degrees}, {"cells", rep.cells}, {"closed_form", rep.closed_form},
                                            {"phi_image", rep.phi_image}, {"oracle", rep.oracle}, {"named", rep.named},
                                            {"threads", configured_threads()}, {"mismatches", mism}, {"pass", rep.ok()}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "n = " << n << ", weight <= " << max_weight << ", |m| <= " << max_m << ": " << rep.degrees << " degrees, "
                          << rep.cells << " level cells\n";
                std::cout << "  methods: closed-form " << rep.closed_form << ", phi-image " << rep.phi_image << ", oracle " << rep.oracle
                          << "; named Mackey functors " << rep.named << "\n";
                for (const auto& x : rep.mismatches) {
                    std::cout << "  MISMATCH " << x.what << " at H^{" << x.degree.str() << "} level " << x.level << ": expected "
                              << x.expected << ", got " << x.got << " [" << x.method << "]\n";
                    for (const auto& step : x.log) std::cout << "      " << step << "\n";
                }
                std::cout << (rep.ok() ? "PASS" : "FAIL") << "\n";
            }
            return rep.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
