#include "fbmchaos/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace fbmchaos::kern::neon {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum(const double* a, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc0 = vaddq_f64(acc0, vld1q_f64(a + i));
    double acc = vaddvq_f64(acc0);
    for (; i < n; ++i) acc += a[i];
    return acc;
}

double sum_sq(const double* a, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t x = vld1q_f64(a + i);
        acc0 = vfmaq_f64(acc0, x, x);
    }
    double acc = vaddvq_f64(acc0);
    for (; i < n; ++i) acc += a[i] * a[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace fbmchaos::kern::neon

#endif
