#include "bredon/frontend.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bredon/sweep.hpp"

namespace bredon {

namespace {

nlohmann::json int_json(const Int& x)
{
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

nlohmann::json abelian_json(const AbelianGroup& g)
{
    nlohmann::json t = nlohmann::json::array();
    for (const auto& x : g.torsion) t.push_back(int_json(x));
    return {{"rank", g.rank}, {"torsion", t}};
}

}  // namespace

GradingDegree parse_degree(const std::string& text, long n)
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
    int m = 0;
    std::map<long, int> mult;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto token_at = [&](size_t from) {
        size_t j = from;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '+' &&
               (text[j] != '-' || j == from))
            ++j;
        return text.substr(from, j - from);
    };
    auto digits = [&](long& out) {
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) return false;
        out = std::stol(text.substr(i, j - i));
        i = j;
        return true;
    };
    skip();
    if (i == text.size()) throw std::invalid_argument("empty degree");
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw std::invalid_argument("expected + or - before '" + token_at(i) + "'");
        }
        first = false;
        const size_t start = i;
        long coef = 1;
        const bool has_coef = digits(coef);
        skip();
        if (i < text.size() && text[i] == '*') {
            if (!has_coef) throw std::invalid_argument("unexpected token '" + token_at(start) + "' in degree");
            ++i;
            skip();
        }
        if (i < text.size() && (text[i] == 'l' || text[i] == 'L')) {
            ++i;
            long d = 0;
            if (!digits(d)) throw std::invalid_argument("unexpected token '" + token_at(start) + "' in degree");
            if (d < 1 || n % d != 0)
                throw std::invalid_argument("token '" + token_at(start) + "': " + std::to_string(d) + " does not divide n = " +
                                            std::to_string(n));
            mult[d] += sign * static_cast<int>(coef);
        } else if (has_coef) {
            m += sign * static_cast<int>(coef);
        } else {
            throw std::invalid_argument("unexpected token '" + token_at(start) + "' in degree");
        }
        skip();
        if (i < text.size() && text[i] != '+' && text[i] != '-')
            throw std::invalid_argument("unexpected token '" + token_at(i) + "' in degree");
    }
    return GradingDegree::make(m, mult);
}

nlohmann::json group_json(const GroupResult& r, long level)
{
    nlohmann::json reductions = r.reduction_log;
    return {{"n", r.n},
            {"degree", r.degree.str()},
            {"level", level},
            {"group", abelian_json(r.at(level))},
            {"mackey", r.named.kind == NamedMackey::Kind::Unrecognized ? nlohmann::json(nullptr) : nlohmann::json(r.named.str())},
            {"method", to_string(r.method)},
            {"reductions", reductions}};
}

std::string group_text(const GroupResult& r, long level)
{
    std::ostringstream os;
    os << "H^{" << r.degree.str() << "} over C_" << r.n << " at level " << level << ": " << r.at(level).str() << "\n";
    os << "  region:  " << to_string(classify(r.degree)) << "\n";
    os << "  mackey:  " << (r.named.kind == NamedMackey::Kind::Unrecognized ? "(levelwise only) " + str(r.levels) : r.named.str()) << "\n";
    os << "  method:  " << to_string(r.method) << "\n";
    for (const auto& step : r.reduction_log) os << "  reduce:  " << step << "\n";
    return os.str();
}

nlohmann::json element_json(const Ring& ring, const SymbolicElement& e)
{
    nlohmann::json j;
    j["n"] = ring.n();
    j["rules"] = e.rules;
    if (e.is_unknown()) {
        j["status"] = "unknown";
        j["reason"] = e.reason;
        return j;
    }
    if (e.is_zero()) {
        j["status"] = "zero";
        j["value"] = "0";
        return j;
    }
    j["status"] = "value";
    j["value"] = to_string(e);
    j["degree"] = ring.degree_of(e).str();
    auto ord = ring.order_of(e);
    j["order"] = ord ? int_json(*ord) : nlohmann::json("infinite");
    return j;
}

// ---------------------------------------------------------------- charts

ChartSpec ChartSpec::standard(long n)
{
    ChartSpec s;
    s.n = n;
    if (n % 2 == 0) throw std::invalid_argument("n must be odd");
    auto ps = prime_factors(n);
    if (ps.empty()) throw std::invalid_argument("chart needs n > 1");
    s.a = ps.front();
    s.b = n;
    return s;
}

void ChartSpec::validate() const
{
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd");
    for (long d : {a, b})
        if (d < 2 || n % d != 0) throw std::invalid_argument("chart axis " + std::to_string(d) + " is not a divisor > 1 of n");
    if (a == b) throw std::invalid_argument("chart axes must be distinct divisors");
    if (r_lo > r_hi || k_lo > k_hi || m_lo > m_hi) throw std::invalid_argument("empty chart range");
}

const ChartCell& Chart::at(int r, int k, int m) const
{
    const auto& s = spec;
    if (r < s.r_lo || r > s.r_hi || k < s.k_lo || k > s.k_hi || m < s.m_lo || m > s.m_hi)
        throw std::out_of_range("chart cell outside the computed box");
    const size_t K = s.k_hi - s.k_lo + 1, M = s.m_hi - s.m_lo + 1;
    return cells[((r - s.r_lo) * K + (k - s.k_lo)) * M + (m - s.m_lo)];
}

std::string chart_symbol(const AbelianGroup& g) { return g.is_zero() ? "." : "[" + g.str() + "]"; }

Chart compute_chart(const ChartSpec& spec)
{
    spec.validate();
    Chart c;
    c.spec = spec;
    for (int r = spec.r_lo; r <= spec.r_hi; ++r)
        for (int k = spec.k_lo; k <= spec.k_hi; ++k)
            for (int m = spec.m_lo; m <= spec.m_hi; ++m) {
                ChartCell cell;
                cell.r = r;
                cell.k = k;
                cell.m = m;
                cell.degree = lambda(spec.a, r) + lambda(spec.b, k) + constant(m);
                cell.dim = cell.degree.dim();
                cell.region = classify(cell.degree);
                c.cells.push_back(cell);
            }
    const long count = static_cast<long>(c.cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(configured_threads())
#endif
    for (long i = 0; i < count; ++i) {
        auto& cell = c.cells[i];
        cell.group = group(spec.n, cell.degree).at(1);
        cell.symbol = chart_symbol(cell.group);
    }
    return c;
}

std::string render_text(const Chart& c)
{
    const auto& s = c.spec;
    size_t width = 3;
    for (const auto& cell : c.cells) width = std::max(width, cell.symbol.size());
    std::ostringstream os;
    os << "H^{r*l" << s.a << " + k*l" << s.b << " + m} over C_" << s.n << " at level 1\n";
    for (int r = s.r_lo; r <= s.r_hi; ++r) {
        os << "\nr = " << r << "\n";
        os << std::setw(6) << "k \\ m";
        for (int m = s.m_lo; m <= s.m_hi; ++m) os << " " << std::setw(static_cast<int>(width)) << m;
        os << "\n";
        for (int k = s.k_hi; k >= s.k_lo; --k) {
            os << std::setw(6) << k;
            for (int m = s.m_lo; m <= s.m_hi; ++m) os << " " << std::setw(static_cast<int>(width)) << c.at(r, k, m).symbol;
            os << "\n";
        }
        // The four dim lines that carry the interesting groups.
        for (int d : {1, 0, -1, -2}) {
            std::vector<std::string> nonzero;
            for (int k = s.k_lo; k <= s.k_hi; ++k)
                for (int m = s.m_lo; m <= s.m_hi; ++m) {
                    const auto& cell = c.at(r, k, m);
                    if (cell.dim == d && !cell.group.is_zero())
                        nonzero.push_back("(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")" + cell.symbol);
                }
            os << "  dim " << std::setw(2) << d << ": ";
            if (nonzero.empty()) {
                os << "all zero";
            } else {
                for (size_t i = 0; i < nonzero.size(); ++i) os << (i ? " " : "") << nonzero[i];
            }
            os << "\n";
        }
    }
    os << "\nlegend: . = 0, [Z] = integers, [Z/k] = cyclic of order k, [Z+Z/k] = Z plus Z/k; "
          "rows are k (coefficient of l"
       << s.b << "), columns are m\n";
    return os.str();
}

nlohmann::json chart_json(const Chart& c)
{
    const auto& s = c.spec;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : c.cells)
        cells.push_back({{"r", cell.r},
                         {"k", cell.k},
                         {"m", cell.m},
                         {"degree", cell.degree.str()},
                         {"dim", cell.dim},
                         {"region", to_string(cell.region)},
                         {"group", abelian_json(cell.group)},
                         {"symbol", cell.symbol}});
    return {{"n", s.n},
            {"axes", {{"r", s.a}, {"k", s.b}}},
            {"ranges", {{"r", {s.r_lo, s.r_hi}}, {"k", {s.k_lo, s.k_hi}}, {"m", {s.m_lo, s.m_hi}}}},
            {"level", 1},
            {"cells", cells}};
}

}  // namespace bredon
