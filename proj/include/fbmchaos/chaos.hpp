#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fbmchaos {

// Finitely supported multiplicity map over basis indices; labels one product
// of Hermite polynomials in independent Gaussian coordinates. Entries are
// kept sorted by index and never store zero multiplicities, so equality is
// structural.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::pair<int, int>> entries);

    static MultiIndex unit(int index);                 // one first-order factor
    static MultiIndex single(int index, int mult);     // one factor of given order

    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int order() const;                                 // total multiplicity
    int multiplicity(int index) const;
    bool support_within(int lo, int hi) const;

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

private:
    std::vector<std::pair<int, int>> entries_;
};

// alpha! = product of factorials of the multiplicities (each capped at 170).
double multiindex_factorial(const MultiIndex& a);

// Set of basis indices treated as observed ("past"): either an explicit set
// or a half-line {j <= threshold}.
class PastSet {
public:
    static PastSet half_line(int threshold);
    static PastSet explicit_set(std::set<int> indices);
    static PastSet all();
    static PastSet none();

    bool contains(int index) const;
    bool contains_support(const MultiIndex& a) const;

private:
    enum class Kind { half_line, set, all, none } kind_ = Kind::none;
    int threshold_ = 0;
    std::set<int> set_;
};

struct WickDiagnostics {
    bool variance_mismatch = false;
    double declared_variance = 0.0;
    double coefficient_energy = 0.0;  // sum of squared first-order coefficients
};

// Sparse real-coefficient expansion over products of Hermite polynomials.
// Coefficients with |c| < 1e-15 are dropped on insertion; total order per
// term is capped (default 12, override at construction).
class ChaosExpansion {
public:
    ChaosExpansion() = default;
    ChaosExpansion(int window_lo, int window_hi, int max_order = 12);

    void set_coefficient(const MultiIndex& a, double c);
    void add_coefficient(const MultiIndex& a, double c);
    double coefficient(const MultiIndex& a) const;

    const std::map<MultiIndex, double>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    int window_lo() const { return window_lo_; }
    int window_hi() const { return window_hi_; }
    int max_order() const { return max_order_; }

    bool operator==(const ChaosExpansion& o) const { return terms_ == o.terms_; }

private:
    std::map<MultiIndex, double> terms_;
    int window_lo_ = -4096;
    int window_hi_ = 4096;
    int max_order_ = 12;
};

// Sum over terms of coeff * prod_j h_{m_j}(draws[j]). Every index in the
// support must have a draw.
double chaos_eval(const ChaosExpansion& e, const std::map<int, double>& draws);

// Conditional expectation with respect to the sigma-field of the past
// indices: keeps exactly the terms whose support lies in `past`.
ChaosExpansion chaos_condition(const ChaosExpansion& e, const PastSet& past);

// (mean, variance) from orthogonality: mean is the constant coefficient,
// variance is sum over nonconstant terms of c^2 * alpha!.
std::pair<double, double> chaos_mean_variance(const ChaosExpansion& e);

// Expansion of the square of the first-order element sum_j r_j E_j whose
// total variance is `total_variance`: constant term total_variance, diagonal
// second-order terms r_j^2, each unordered off-diagonal pair stored once
// with coefficient 2 r_i r_j. If sum r_j^2 differs from total_variance by
// more than `var_tol` (relative), the diagnostics flag is set; not an error
// (the declared variance may include energy outside the index window).
ChaosExpansion wick_square(const std::map<int, double>& r, double total_variance,
                           WickDiagnostics* diag = nullptr, double var_tol = 0.02);

// Truncated Wick exponential of the first-order element with coefficients
// c: all terms of total order <= order, coefficient prod_n c_n^{a_n} / a_n!.
// The constant term is 1, i.e. the expansion has mean one; the implied
// normalization is exp(X - Var(X)/2).
ChaosExpansion wick_exponential(const std::map<int, double>& c, int order);

// Text round-trip. One line per term: "j1:m1,j2:m2,... <coeff>" with the
// constant term written as "- <coeff>"; 17 significant digits, LF endings.
std::string chaos_to_text(const ChaosExpansion& e);
ChaosExpansion chaos_from_text(const std::string& text,
                               std::optional<std::pair<int, int>> window = std::nullopt,
                               int max_order = 12);

}  // namespace fbmchaos
