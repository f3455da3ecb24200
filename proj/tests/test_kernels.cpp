#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbmchaos/kernels.hpp"
#include "fbmchaos/simulate.hpp"

using namespace fbmchaos;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t stream) {
    CounterRng rng(42, stream);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}

}  // namespace

TEST_CASE("simd variants agree with the scalar reference") {
    const auto initial = kern::active_backend();
    // sizes straddling every vector-width remainder path
    const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 1001};
    for (auto backend : {kern::Backend::avx2, kern::Backend::neon}) {
        if (!kern::force_backend(backend)) continue;
        INFO("backend ", kern::backend_name(backend));
        for (std::size_t n : sizes) {
            auto a = random_vec(n, 1000 + n);
            auto b = random_vec(n, 2000 + n);
            const double d0 = kern::scalar::dot(a.data(), b.data(), n);
            const double d1 = kern::dot(a.data(), b.data(), n);
            CHECK(std::abs(d1 - d0) <= 1e-12 * (1.0 + std::abs(d0)));

            const double s0 = kern::scalar::sum(a.data(), n);
            const double s1 = kern::sum(a.data(), n);
            CHECK(std::abs(s1 - s0) <= 1e-12 * (1.0 + std::abs(s0)));

            const double q0 = kern::scalar::sum_sq(a.data(), n);
            const double q1 = kern::sum_sq(a.data(), n);
            CHECK(std::abs(q1 - q0) <= 1e-12 * (1.0 + std::abs(q0)));

            auto y0 = b, y1 = b;
            kern::scalar::axpy(0.37, a.data(), y0.data(), n);
            kern::axpy(0.37, a.data(), y1.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(y1[i] - y0[i]) <= 1e-14 * (1.0 + std::abs(y0[i])));
        }
    }
    kern::force_backend(initial);
}

TEST_CASE("scalar kernels compute what they say") {
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {4.0, -5.0, 6.0};
    CHECK(kern::scalar::dot(a, b, 3) == 12.0);
    CHECK(kern::scalar::sum(a, 3) == 6.0);
    CHECK(kern::scalar::sum_sq(a, 3) == 14.0);
    double y[] = {1.0, 1.0, 1.0};
    kern::scalar::axpy(2.0, a, y, 3);
    CHECK(y[0] == 3.0);
    CHECK(y[1] == 5.0);
    CHECK(y[2] == 7.0);
}

TEST_CASE("forcing an unsupported backend fails cleanly") {
#if defined(__x86_64__) || defined(_M_X64)
    CHECK_FALSE(kern::force_backend(kern::Backend::neon));
#else
    CHECK_FALSE(kern::force_backend(kern::Backend::avx2));
#endif
    CHECK(kern::force_backend(kern::Backend::scalar));
    CHECK(kern::active_backend() == kern::Backend::scalar);
    kern::force_backend(kern::Backend::avx2);  // restore best if available
    kern::force_backend(kern::Backend::neon);
}
