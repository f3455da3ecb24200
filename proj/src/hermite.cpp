#include "fbmchaos/hermite.hpp"

#include <stdexcept>
#include <string>

namespace fbmchaos {

namespace {

constexpr int kMaxDegree = 170;

void check_degree(int n) {
    if (n < 0 || n > kMaxDegree)
        throw std::domain_error("hermite: degree out of range [0, 170], got " +
                                std::to_string(n));
}

}  // namespace

double hermite(int n, double x) {
    check_degree(n);
    if (n == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int k = 1; k < n; ++k) {
        const double hp = x * h - static_cast<double>(k) * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double hermite_param(int n, double a, double x) {
    check_degree(n);
    if (n == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int k = 1; k < n; ++k) {
        const double hp = x * h - static_cast<double>(k) * a * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double conditional_moment(int n, double mean, double var) {
    if (var < 0.0) throw std::domain_error("conditional_moment: variance must be >= 0");
    return hermite_param(n, -var, mean);
}

double conditional_hermite(int n, double cond_mean, double explained_var) {
    if (explained_var < 0.0)
        throw std::domain_error("conditional_hermite: explained variance must be >= 0");
    return hermite_param(n, explained_var, cond_mean);
}

}  // namespace fbmchaos
