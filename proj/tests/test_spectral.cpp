#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scatnet/fft.hpp"
#include "scatnet/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace scatnet;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {u(rng), u(rng)};
    return v;
}

// Direct circular convolution with the Riemann measure, O(n^2).
std::vector<cplx> direct_conv_1d(const FrequencyGrid& g, const std::vector<cplx>& f,
                                 const std::vector<cplx>& h) {
    std::size_t n = g.size();
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += f[k] * h[(m - k + n) % n];
        out[m] = s * g.spatial_measure();
    }
    return out;
}

std::vector<cplx> direct_conv_2d(const FrequencyGrid& g, const std::vector<cplx>& f,
                                 const std::vector<cplx>& h) {
    std::size_t n = g.samples_per_axis();
    std::vector<cplx> out(n * n);
    for (std::size_t m0 = 0; m0 < n; ++m0)
        for (std::size_t m1 = 0; m1 < n; ++m1) {
            cplx s = 0.0;
            for (std::size_t k0 = 0; k0 < n; ++k0)
                for (std::size_t k1 = 0; k1 < n; ++k1)
                    s += f[k0 * n + k1] *
                         h[((m0 - k0 + n) % n) * n + ((m1 - k1 + n) % n)];
            out[m0 * n + m1] = s * g.spatial_measure();
        }
    return out;
}

}  // namespace

TEST_CASE("grid frequency layout") {
    FrequencyGrid g(1, 8, 4.0);
    CHECK(g.spacing() == doctest::Approx(1.0));
    CHECK(g.spatial_step() == doctest::Approx(0.125));
    // dx * dw * n == 1 ties the two measures together.
    CHECK(g.spacing() * g.spatial_step() * 8 == doctest::Approx(1.0));
    const double want[8] = {0, 1, 2, 3, -4, -3, -2, -1};
    for (int i = 0; i < 8; ++i) CHECK(g.axis_frequency(i) == doctest::Approx(want[i]));
    // ascending traversal visits -4,-3,...,3.
    for (std::size_t a = 0; a + 1 < 8; ++a) {
        double w0 = g.axis_frequency(g.flat_from_ascending(a));
        double w1 = g.axis_frequency(g.flat_from_ascending(a + 1));
        CHECK(w0 < w1);
    }
    CHECK_THROWS_AS(FrequencyGrid(3, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid(1, 12, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid(1, 8, 0.0), std::invalid_argument);
}

TEST_CASE("forward/backward roundtrip and Parseval") {
    for (int dim : {1, 2}) {
        for (std::size_t n : dim == 1 ? std::vector<std::size_t>{8, 64, 1024, 4096}
                                      : std::vector<std::size_t>{8, 32, 128}) {
            FrequencyGrid g(dim, n, 16.0);
            auto f = random_vec(g.size(), 42 + n + dim);
            std::vector<cplx> spec(g.size()), back(g.size());
            fft::forward(g, f.data(), spec.data());
            fft::backward(g, spec.data(), back.data());
            double max_err = 0.0, max_val = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                max_err = std::max(max_err, std::abs(back[i] - f[i]));
                max_val = std::max(max_val, std::abs(f[i]));
            }
            CHECK(max_err <= 1e-10 * max_val);

            double es = 0.0, ew = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                es += std::norm(f[i]);
                ew += std::norm(spec[i]);
            }
            es *= g.spatial_measure();
            ew *= g.bin_measure();
            CHECK(ew == doctest::Approx(es).epsilon(1e-12));
        }
    }
}

TEST_CASE("convolution theorem vs direct circular convolution") {
    for (std::size_t n : {8u, 16u, 64u}) {
        FrequencyGrid g(1, n, 8.0);
        auto fv = random_vec(n, n);
        auto hv = random_vec(n, 2 * n);
        Signal f = Signal::from_spatial(g, fv);
        std::vector<cplx> h_hat(n);
        fft::forward(g, hv.data(), h_hat.data());
        Signal conv = convolve(f, h_hat);
        auto want = direct_conv_1d(g, fv, hv);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(conv.spatial()[i] - want[i]) <= 1e-9);
    }
    FrequencyGrid g2(2, 8, 4.0);
    auto fv = random_vec(64, 5);
    auto hv = random_vec(64, 6);
    Signal f = Signal::from_spatial(g2, fv);
    std::vector<cplx> h_hat(64);
    fft::forward(g2, hv.data(), h_hat.data());
    Signal conv = convolve(f, h_hat);
    auto want = direct_conv_2d(g2, fv, hv);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(conv.spatial()[i] - want[i]) <= 1e-9);
}

TEST_CASE("unit impulse is the convolution identity") {
    FrequencyGrid g(1, 64, 8.0);
    std::vector<cplx> imp(64, 0.0);
    imp[0] = 1.0 / g.spatial_measure();
    Signal delta = Signal::from_spatial(g, imp);
    for (std::size_t i = 0; i < 64; ++i)
        CHECK(std::abs(delta.spectral()[i] - 1.0) <= 1e-12);

    auto hv = random_vec(64, 9);
    Signal h = Signal::from_spatial(g, hv);
    Signal conv = convolve(delta, h.spectral());
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(conv.spatial()[i] - hv[i]) <= 1e-10);
}

TEST_CASE("modulus preserves the L2 norm") {
    FrequencyGrid g(1, 256, 16.0);
    Signal f = Signal::from_spatial(g, random_vec(256, 11));
    Signal m = modulus(f);
    CHECK(m.energy() == doctest::Approx(f.energy()).epsilon(1e-12));
    for (const auto& z : m.spatial()) {
        CHECK(z.imag() == 0.0);
        CHECK(z.real() >= 0.0);
    }
}

TEST_CASE("Sobolev norm reduces to L2 at s=0 and obeys band-limit growth") {
    FrequencyGrid g(1, 512, 16.0);
    Signal f = Signal::from_spatial(g, random_vec(512, 13));
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(f.l2_norm()).epsilon(1e-12));
    CHECK_THROWS_AS(sobolev_norm(f, -1.0), std::domain_error);

    // Band-limited to |w| <= L: l2 <= H^s <= (1+L^2)^(s/2) l2.
    double L = 2.0;
    std::vector<cplx> spec(512, 0.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < 512; ++i)
        if (std::abs(g.axis_frequency(i)) <= L) spec[i] = {u(rng), u(rng)};
    Signal b = Signal::from_spectral(g, spec);
    double s = 1.5;
    double hs = sobolev_norm(b, s);
    CHECK(hs >= b.l2_norm());
    CHECK(hs <= std::pow(1.0 + L * L, s / 2.0) * b.l2_norm() * (1 + 1e-12));
}

TEST_CASE("signal energy agrees between domains and construction is validated") {
    FrequencyGrid g(2, 16, 4.0);
    auto v = random_vec(256, 23);
    Signal f = Signal::from_spatial(g, v);
    double e_spatial = f.energy();
    (void)f.spectral();
    Signal h = Signal::from_spectral(g, f.spectral());
    CHECK(h.energy() == doctest::Approx(e_spatial).epsilon(1e-12));
    CHECK_THROWS_AS(Signal::from_spatial(g, std::vector<cplx>(17)), std::invalid_argument);
}
