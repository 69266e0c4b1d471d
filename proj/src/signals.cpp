#include "scatnet/signals.hpp"

#include "scatnet/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace scatnet {

namespace {

void normalize_unit(std::vector<cplx>& spec, double bin_measure) {
    double e = kernels::active().sq_norm(spec.data(), spec.size()) * bin_measure;
    if (e <= 0.0) throw std::runtime_error("generator produced a zero signal");
    double s = 1.0 / std::sqrt(e);
    for (auto& z : spec) z *= s;
}

}  // namespace

Signal gen_bandlimited(const FrequencyGrid& grid, double L, std::uint64_t seed) {
    if (!(L > 0.0) || L > grid.omega_max())
        throw std::domain_error("gen_bandlimited: need 0 < L <= omega_max");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> spec(grid.size(), cplx(0.0, 0.0));
    // Ascending-frequency traversal keeps the draw order independent of the
    // storage convention.
    for (std::size_t a = 0; a < grid.size(); ++a) {
        std::size_t flat = grid.flat_from_ascending(a);
        double r = std::sqrt(grid.frequency_norm2(flat));
        if (r >= L) continue;
        double t = std::cos(std::numbers::pi / 2.0 * r / L);
        spec[flat] = cplx(gauss(rng), gauss(rng)) * (t * t);
    }
    normalize_unit(spec, grid.bin_measure());
    return Signal::from_spectral(grid, std::move(spec));
}

Signal gen_sobolev(const FrequencyGrid& grid, double s, std::uint64_t seed, double margin) {
    if (!(s > 0.0)) throw std::domain_error("gen_sobolev: s must be positive");
    if (!(margin > 0.0)) throw std::domain_error("gen_sobolev: margin must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    double expo = -(s + grid.dim() / 2.0 + margin) / 2.0;
    double hi = 0.5 * grid.omega_max(), lo = 0.4 * grid.omega_max();
    std::vector<cplx> spec(grid.size(), cplx(0.0, 0.0));
    for (std::size_t a = 0; a < grid.size(); ++a) {
        std::size_t flat = grid.flat_from_ascending(a);
        double r2 = grid.frequency_norm2(flat);
        double r = std::sqrt(r2);
        if (r >= hi) continue;
        double env = std::pow(1.0 + r2, expo);
        if (r > lo) {
            double t = std::cos(std::numbers::pi / 2.0 * (r - lo) / (hi - lo));
            env *= t * t;
        }
        double th = phase(rng);
        spec[flat] = cplx(env * std::cos(th), env * std::sin(th));
    }
    normalize_unit(spec, grid.bin_measure());
    return Signal::from_spectral(grid, std::move(spec));
}

Signal gen_counterexample_signal(const FrequencyGrid& grid, double l) {
    if (grid.omega_max() < 2.0)
        throw std::domain_error("gen_counterexample_signal: need omega_max >= 2");
    if (!(l > grid.dim() / 2 + 1))
        throw std::domain_error("gen_counterexample_signal: need l > floor(d/2) + 1");
    std::vector<cplx> spec(grid.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r = std::sqrt(grid.frequency_norm2(i));
        if (r < 1.0) spec[i] = std::pow(1.0 - r, l);
    }
    return Signal::from_spectral(grid, std::move(spec));
}

CartoonSpec CartoonSpec::random(const FrequencyGrid& grid, std::uint64_t seed) {
    double T = grid.spatial_period();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    CartoonSpec spec;
    int n1 = 2 + static_cast<int>(uni(rng) * 2.0);  // 2..3 smooth blobs
    for (int i = 0; i < n1; ++i) {
        GaussianBlob b;
        b.amp = 0.5 + uni(rng);
        b.x0 = (0.2 + 0.6 * uni(rng)) * T;
        b.y0 = (0.2 + 0.6 * uni(rng)) * T;
        b.sigma = (0.05 + 0.10 * uni(rng)) * T;
        spec.f1.push_back(b);
    }
    spec.cx = (0.40 + 0.20 * uni(rng)) * T;
    spec.cy = (0.40 + 0.20 * uni(rng)) * T;
    spec.radius = (0.10 + 0.10 * uni(rng)) * T;
    // Wide component so f2 is non-trivial on the disk boundary.
    GaussianBlob wide;
    wide.amp = 0.5 + 0.5 * uni(rng);
    wide.x0 = spec.cx;
    wide.y0 = spec.cy;
    wide.sigma = (0.3 + 0.2 * uni(rng)) * T;
    spec.f2.push_back(wide);
    spec.f2_constant = 0.25 + 0.25 * uni(rng);
    spec.size_K = std::max(2.0 * std::numbers::pi * spec.radius, 2.0) * 1.5;
    return spec;
}

Signal gen_cartoon2d(const FrequencyGrid& grid, const CartoonSpec& spec) {
    if (grid.dim() != 2) throw std::domain_error("gen_cartoon2d: grid must be 2-D");
    double T = grid.spatial_period();
    if (!(spec.radius > 0.0) || spec.cx - spec.radius <= 0.0 || spec.cx + spec.radius >= T ||
        spec.cy - spec.radius <= 0.0 || spec.cy + spec.radius >= T)
        throw std::domain_error("gen_cartoon2d: disk must fit strictly inside the spatial period");
    if (2.0 * std::numbers::pi * spec.radius > spec.size_K)
        throw std::domain_error("gen_cartoon2d: boundary length exceeds size_K");
    int n = grid.samples_per_axis();
    std::vector<cplx> raster(grid.size());
    auto blob_sum = [](const std::vector<GaussianBlob>& blobs, double x, double y) {
        double v = 0.0;
        for (const auto& b : blobs) {
            double dx = x - b.x0, dy = y - b.y0;
            v += b.amp * std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
        }
        return v;
    };
    double f2_max = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = grid.axis_coordinate(i);
        for (int j = 0; j < n; ++j) {
            double y = grid.axis_coordinate(j);
            double f2 = spec.f2_constant + blob_sum(spec.f2, x, y);
            f2_max = std::max(f2_max, std::abs(f2));
            double dx = x - spec.cx, dy = y - spec.cy;
            bool inside = dx * dx + dy * dy <= spec.radius * spec.radius;
            raster[static_cast<std::size_t>(i) * n + j] =
                blob_sum(spec.f1, x, y) + (inside ? f2 : 0.0);
        }
    }
    if (f2_max > spec.size_K)
        throw std::domain_error("gen_cartoon2d: rasterized sup|f2| exceeds size_K");
    return Signal::from_spatial(grid, std::move(raster));
}

double top_octave_energy_fraction(const Signal& f) {
    const FrequencyGrid& g = f.grid();
    double half = 0.5 * g.omega_max();
    std::vector<double> mask(g.size());
    double w[2];
    for (std::size_t i = 0; i < mask.size(); ++i) {
        g.frequency(i, w);
        double m = g.dim() == 1 ? std::abs(w[0]) : std::max(std::abs(w[0]), std::abs(w[1]));
        mask[i] = m >= half ? 1.0 : 0.0;
    }
    const auto& ops = kernels::active();
    const auto& spec = f.spectral();
    double total = ops.sq_norm(spec.data(), spec.size());
    if (total <= 0.0) return 0.0;
    return ops.weighted_sq_norm(mask.data(), spec.data(), spec.size()) / total;
}

}  // namespace scatnet
