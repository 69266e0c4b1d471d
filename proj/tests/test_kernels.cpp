#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scatnet/kernels.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace scatnet;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {u(rng), u(rng)};
    return v;
}

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<double> w(n);
    for (auto& x : w) x = u(rng);
    return w;
}

// Sizes chosen to cover every SIMD remainder lane count.
const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 64, 255, 1000, 1023};

}  // namespace

TEST_CASE("scalar kernels match std::complex arithmetic") {
    const auto& ops = kernels::scalar_ops();
    for (std::size_t n : sizes) {
        auto a = random_vec(n, 10 + n);
        auto b = random_vec(n, 20 + n);
        std::vector<cplx> out(n);

        ops.cmul(a.data(), b.data(), out.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx want = a[i] * b[i];
            CHECK(out[i].real() == doctest::Approx(want.real()).epsilon(1e-15));
            CHECK(out[i].imag() == doctest::Approx(want.imag()).epsilon(1e-15));
        }

        ops.modulus(a.data(), out.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(out[i].real() == doctest::Approx(std::abs(a[i])).epsilon(1e-15));
            CHECK(out[i].imag() == 0.0);
        }

        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
        CHECK(ops.sq_norm(a.data(), n) == doctest::Approx(s).epsilon(1e-13));

        auto w = random_weights(n, 30 + n);
        double ws = 0.0;
        for (std::size_t i = 0; i < n; ++i) ws += w[i] * std::norm(a[i]);
        CHECK(ops.weighted_sq_norm(w.data(), a.data(), n) == doctest::Approx(ws).epsilon(1e-13));

        std::vector<double> acc(n, 0.5);
        ops.add_abs2(a.data(), acc.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(acc[i] == doctest::Approx(0.5 + std::norm(a[i])).epsilon(1e-14));

        std::vector<cplx> scaled(n);
        ops.mul_real(a.data(), w.data(), scaled.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(scaled[i].real() == a[i].real() * w[i]);
            CHECK(scaled[i].imag() == a[i].imag() * w[i]);
        }
    }
}

#ifdef SCATNET_X86
TEST_CASE("avx2 pointwise kernels are bitwise equal to scalar") {
    if (!kernels::cpu_has_avx2()) return;
    const auto& sc = kernels::scalar_ops();
    const auto& vx = kernels::avx2_ops();
    for (std::size_t n : sizes) {
        auto a = random_vec(n, 100 + n);
        auto b = random_vec(n, 200 + n);
        auto w = random_weights(n, 300 + n);
        std::vector<cplx> o1(n), o2(n);

        sc.cmul(a.data(), b.data(), o1.data(), n);
        vx.cmul(a.data(), b.data(), o2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(o1[i].real() == o2[i].real());
            CHECK(o1[i].imag() == o2[i].imag());
        }

        sc.modulus(a.data(), o1.data(), n);
        vx.modulus(a.data(), o2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(o1[i].real() == o2[i].real());
            CHECK(o1[i].imag() == o2[i].imag());
        }

        std::vector<double> c1(n, 1.25), c2(n, 1.25);
        sc.add_abs2(a.data(), c1.data(), n);
        vx.add_abs2(a.data(), c2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(c1[i] == c2[i]);

        std::vector<cplx> m1(n), m2(n);
        sc.mul_real(a.data(), w.data(), m1.data(), n);
        vx.mul_real(a.data(), w.data(), m2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(m1[i].real() == m2[i].real());
            CHECK(m1[i].imag() == m2[i].imag());
        }
    }
}

TEST_CASE("avx2 reductions match scalar within accumulation slack") {
    if (!kernels::cpu_has_avx2()) return;
    const auto& sc = kernels::scalar_ops();
    const auto& vx = kernels::avx2_ops();
    for (std::size_t n : sizes) {
        auto a = random_vec(n, 400 + n);
        auto w = random_weights(n, 500 + n);
        double s1 = sc.sq_norm(a.data(), n);
        double s2 = vx.sq_norm(a.data(), n);
        CHECK(s2 == doctest::Approx(s1).epsilon(1e-13));
        double w1 = sc.weighted_sq_norm(w.data(), a.data(), n);
        double w2 = vx.weighted_sq_norm(w.data(), a.data(), n);
        CHECK(w2 == doctest::Approx(w1).epsilon(1e-13));
    }
}
#endif

TEST_CASE("active dispatch returns a working implementation") {
    const auto& ops = kernels::active();
    CHECK(ops.name != nullptr);
    auto a = random_vec(33, 7);
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    CHECK(ops.sq_norm(a.data(), a.size()) == doctest::Approx(s).epsilon(1e-13));
}
