#include "fbmchaos/kernels.hpp"

namespace fbmchaos::kern {

namespace {

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect_best() {
    if (backend_supported(Backend::avx2)) return Backend::avx2;
    if (backend_supported(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend& current() {
    static Backend b = detect_best();
    return b;
}

}  // namespace

Backend active_backend() { return current(); }

bool force_backend(Backend b) {
    if (!backend_supported(b)) return false;
    current() = b;
    return true;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

double dot(const double* a, const double* b, std::size_t n) {
    switch (current()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return avx2::dot(a, b, n);
#endif
#if defined(__aarch64__)
        case Backend::neon: return neon::dot(a, b, n);
#endif
        default: return scalar::dot(a, b, n);
    }
}

double sum(const double* a, std::size_t n) {
    switch (current()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return avx2::sum(a, n);
#endif
#if defined(__aarch64__)
        case Backend::neon: return neon::sum(a, n);
#endif
        default: return scalar::sum(a, n);
    }
}

double sum_sq(const double* a, std::size_t n) {
    switch (current()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return avx2::sum_sq(a, n);
#endif
#if defined(__aarch64__)
        case Backend::neon: return neon::sum_sq(a, n);
#endif
        default: return scalar::sum_sq(a, n);
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    switch (current()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: avx2::axpy(alpha, x, y, n); return;
#endif
#if defined(__aarch64__)
        case Backend::neon: neon::axpy(alpha, x, y, n); return;
#endif
        default: scalar::axpy(alpha, x, y, n); return;
    }
}

}  // namespace fbmchaos::kern
