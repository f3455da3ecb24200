#include "fbmchaos/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "fbmchaos/hermite.hpp"

namespace fbmchaos {

namespace {

constexpr double kDropTol = 1e-15;

double factorial(int n) {
    if (n < 0 || n > 170) throw std::domain_error("factorial: argument out of [0, 170]");
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<std::pair<int, int>> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].second < 1)
            throw std::invalid_argument("MultiIndex: multiplicities must be >= 1");
        if (i > 0 && entries_[i].first == entries_[i - 1].first)
            throw std::invalid_argument("MultiIndex: duplicate index");
    }
}

MultiIndex MultiIndex::unit(int index) { return MultiIndex({{index, 1}}); }

MultiIndex MultiIndex::single(int index, int mult) { return MultiIndex({{index, mult}}); }

int MultiIndex::order() const {
    int total = 0;
    for (const auto& [j, m] : entries_) total += m;
    return total;
}

int MultiIndex::multiplicity(int index) const {
    for (const auto& [j, m] : entries_)
        if (j == index) return m;
    return 0;
}

bool MultiIndex::support_within(int lo, int hi) const {
    for (const auto& [j, m] : entries_)
        if (j < lo || j > hi) return false;
    return true;
}

double multiindex_factorial(const MultiIndex& a) {
    double f = 1.0;
    for (const auto& [j, m] : a.entries()) f *= factorial(m);
    return f;
}

PastSet PastSet::half_line(int threshold) {
    PastSet p;
    p.kind_ = Kind::half_line;
    p.threshold_ = threshold;
    return p;
}

PastSet PastSet::explicit_set(std::set<int> indices) {
    PastSet p;
    p.kind_ = Kind::set;
    p.set_ = std::move(indices);
    return p;
}

PastSet PastSet::all() {
    PastSet p;
    p.kind_ = Kind::all;
    return p;
}

PastSet PastSet::none() {
    PastSet p;
    p.kind_ = Kind::none;
    return p;
}

bool PastSet::contains(int index) const {
    switch (kind_) {
        case Kind::half_line: return index <= threshold_;
        case Kind::set: return set_.count(index) > 0;
        case Kind::all: return true;
        case Kind::none: return false;
    }
    return false;
}

bool PastSet::contains_support(const MultiIndex& a) const {
    for (const auto& [j, m] : a.entries())
        if (!contains(j)) return false;
    return true;
}

ChaosExpansion::ChaosExpansion(int window_lo, int window_hi, int max_order)
    : window_lo_(window_lo), window_hi_(window_hi), max_order_(max_order) {
    if (window_lo > window_hi) throw std::invalid_argument("ChaosExpansion: empty window");
    if (max_order < 0) throw std::invalid_argument("ChaosExpansion: negative order cap");
}

void ChaosExpansion::set_coefficient(const MultiIndex& a, double c) {
    if (!a.support_within(window_lo_, window_hi_))
        throw std::domain_error("ChaosExpansion: support outside basis window");
    if (a.order() > max_order_)
        throw std::domain_error("ChaosExpansion: term order exceeds cap");
    if (std::abs(c) < kDropTol)
        terms_.erase(a);
    else
        terms_[a] = c;
}

void ChaosExpansion::add_coefficient(const MultiIndex& a, double c) {
    set_coefficient(a, coefficient(a) + c);
}

double ChaosExpansion::coefficient(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? 0.0 : it->second;
}

double chaos_eval(const ChaosExpansion& e, const std::map<int, double>& draws) {
    double total = 0.0;
    for (const auto& [alpha, c] : e.terms()) {
        double prod = c;
        for (const auto& [j, m] : alpha.entries()) {
            auto it = draws.find(j);
            if (it == draws.end())
                throw std::domain_error("chaos_eval: missing draw for index " +
                                        std::to_string(j));
            prod *= hermite(m, it->second);
        }
        total += prod;
    }
    return total;
}

ChaosExpansion chaos_condition(const ChaosExpansion& e, const PastSet& past) {
    ChaosExpansion out(e.window_lo(), e.window_hi(), e.max_order());
    for (const auto& [alpha, c] : e.terms())
        if (past.contains_support(alpha)) out.set_coefficient(alpha, c);
    return out;
}

std::pair<double, double> chaos_mean_variance(const ChaosExpansion& e) {
    double mean = 0.0, var = 0.0;
    for (const auto& [alpha, c] : e.terms()) {
        if (alpha.empty())
            mean = c;
        else
            var += c * c * multiindex_factorial(alpha);
    }
    return {mean, var};
}

ChaosExpansion wick_square(const std::map<int, double>& r, double total_variance,
                           WickDiagnostics* diag, double var_tol) {
    int lo = 0, hi = 0;
    if (!r.empty()) {
        lo = r.begin()->first;
        hi = r.rbegin()->first;
    }
    ChaosExpansion out(std::min(lo, 0), std::max(hi, 0), 12);
    out.set_coefficient(MultiIndex(), total_variance);

    double energy = 0.0;
    for (auto i = r.begin(); i != r.end(); ++i) {
        energy += i->second * i->second;
        out.set_coefficient(MultiIndex::single(i->first, 2), i->second * i->second);
        for (auto j = std::next(i); j != r.end(); ++j)
            out.set_coefficient(MultiIndex({{i->first, 1}, {j->first, 1}}),
                                2.0 * i->second * j->second);
    }
    if (diag) {
        diag->declared_variance = total_variance;
        diag->coefficient_energy = energy;
        const double scale = std::max({std::abs(total_variance), energy, 1e-30});
        diag->variance_mismatch = std::abs(total_variance - energy) > var_tol * scale;
    }
    return out;
}

namespace {

void enumerate_exponential(const std::vector<std::pair<int, double>>& coeffs, std::size_t pos,
                           int remaining, std::vector<std::pair<int, int>>& current,
                           double coeff_acc, ChaosExpansion& out) {
    out.add_coefficient(MultiIndex(current), coeff_acc);
    if (remaining == 0) return;
    for (std::size_t k = pos; k < coeffs.size(); ++k) {
        double c = coeff_acc;
        current.emplace_back(coeffs[k].first, 0);
        for (int m = 1; m <= remaining; ++m) {
            c *= coeffs[k].second / static_cast<double>(m);
            current.back().second = m;
            enumerate_exponential(coeffs, k + 1, remaining - m, current, c, out);
        }
        current.pop_back();
    }
}

}  // namespace

ChaosExpansion wick_exponential(const std::map<int, double>& c, int order) {
    if (order < 1 || order > 12)
        throw std::domain_error("wick_exponential: order must be in [1, 12]");
    int lo = 0, hi = 0;
    if (!c.empty()) {
        lo = c.begin()->first;
        hi = c.rbegin()->first;
    }
    ChaosExpansion out(std::min(lo, 0), std::max(hi, 0), order);
    std::vector<std::pair<int, double>> coeffs(c.begin(), c.end());
    std::vector<std::pair<int, int>> current;
    enumerate_exponential(coeffs, 0, order, current, 1.0, out);
    return out;
}

std::string chaos_to_text(const ChaosExpansion& e) {
    std::string out;
    for (const auto& [alpha, c] : e.terms()) {
        if (alpha.empty()) {
            out += "-";
        } else {
            bool first = true;
            for (const auto& [j, m] : alpha.entries()) {
                if (!first) out += ",";
                out += std::to_string(j) + ":" + std::to_string(m);
                first = false;
            }
        }
        out += " " + fmt17(c) + "\n";
    }
    return out;
}

ChaosExpansion chaos_from_text(const std::string& text,
                               std::optional<std::pair<int, int>> window, int max_order) {
    struct Term {
        MultiIndex alpha;
        double c;
    };
    std::vector<Term> parsed;
    int lo = 0, hi = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::invalid_argument("chaos_from_text: malformed line '" + line + "'");
        const std::string key = line.substr(0, sp);
        const double c = std::stod(line.substr(sp + 1));
        std::vector<std::pair<int, int>> entries;
        if (key != "-") {
            std::istringstream ka(key);
            std::string item;
            while (std::getline(ka, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("chaos_from_text: malformed entry '" + item + "'");
                const int j = std::stoi(item.substr(0, colon));
                const int m = std::stoi(item.substr(colon + 1));
                entries.emplace_back(j, m);
                lo = std::min(lo, j);
                hi = std::max(hi, j);
            }
        }
        parsed.push_back({MultiIndex(std::move(entries)), c});
    }
    if (window) {
        lo = window->first;
        hi = window->second;
    }
    ChaosExpansion out(lo, hi, max_order);
    for (const auto& t : parsed) out.set_coefficient(t.alpha, t.c);
    return out;
}

}  // namespace fbmchaos
