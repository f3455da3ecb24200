#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the simulation and linear-algebra paths:
// a scalar reference implementation plus SIMD variants picked at runtime.
// All variants must agree with the scalar reference up to reassociation of
// floating-point sums (tested in test_kernels.cpp).

namespace fbmchaos::kern {

enum class Backend { scalar, avx2, neon };

// Backend active for subsequent calls. Default is the best one the CPU
// supports; force_backend() overrides (scalar is always valid).
Backend active_backend();
bool force_backend(Backend b);  // false if unsupported on this CPU
std::string backend_name(Backend b);

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace fbmchaos::kern
