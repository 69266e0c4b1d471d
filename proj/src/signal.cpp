#include "scatnet/signal.hpp"

#include "scatnet/fft.hpp"
#include "scatnet/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace scatnet {

Signal Signal::from_spatial(const FrequencyGrid& grid, std::vector<cplx> data) {
    if (data.size() != grid.size())
        throw std::invalid_argument("Signal: spatial array size does not match grid");
    Signal s(grid);
    s.spatial_ = std::move(data);
    s.has_spatial_ = true;
    return s;
}

Signal Signal::from_spectral(const FrequencyGrid& grid, std::vector<cplx> data) {
    if (data.size() != grid.size())
        throw std::invalid_argument("Signal: spectral array size does not match grid");
    Signal s(grid);
    s.spectral_ = std::move(data);
    s.has_spectral_ = true;
    return s;
}

const std::vector<cplx>& Signal::spatial() const {
    std::lock_guard<std::mutex> lock(fill_mutex_);
    if (!has_spatial_) {
        spatial_.resize(grid_.size());
        fft::backward(grid_, spectral_.data(), spatial_.data());
        has_spatial_ = true;
    }
    return spatial_;
}

const std::vector<cplx>& Signal::spectral() const {
    std::lock_guard<std::mutex> lock(fill_mutex_);
    if (!has_spectral_) {
        spectral_.resize(grid_.size());
        fft::forward(grid_, spatial_.data(), spectral_.data());
        has_spectral_ = true;
    }
    return spectral_;
}

bool Signal::has_spatial() const {
    std::lock_guard<std::mutex> lock(fill_mutex_);
    return has_spatial_;
}

bool Signal::has_spectral() const {
    std::lock_guard<std::mutex> lock(fill_mutex_);
    return has_spectral_;
}

double Signal::energy() const {
    std::lock_guard<std::mutex> lock(fill_mutex_);
    const auto& ops = kernels::active();
    if (has_spectral_)
        return ops.sq_norm(spectral_.data(), spectral_.size()) * grid_.bin_measure();
    return ops.sq_norm(spatial_.data(), spatial_.size()) * grid_.spatial_measure();
}

double Signal::l2_norm() const { return std::sqrt(energy()); }

Signal::Signal(const Signal& o) : grid_(o.grid_) {
    std::lock_guard<std::mutex> lock(o.fill_mutex_);
    spatial_ = o.spatial_;
    spectral_ = o.spectral_;
    has_spatial_ = o.has_spatial_;
    has_spectral_ = o.has_spectral_;
}

Signal& Signal::operator=(const Signal& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(fill_mutex_, o.fill_mutex_);
    grid_ = o.grid_;
    spatial_ = o.spatial_;
    spectral_ = o.spectral_;
    has_spatial_ = o.has_spatial_;
    has_spectral_ = o.has_spectral_;
    return *this;
}

Signal::Signal(Signal&& o) noexcept : grid_(o.grid_) {
    std::lock_guard<std::mutex> lock(o.fill_mutex_);
    spatial_ = std::move(o.spatial_);
    spectral_ = std::move(o.spectral_);
    has_spatial_ = o.has_spatial_;
    has_spectral_ = o.has_spectral_;
}

Signal& Signal::operator=(Signal&& o) noexcept {
    if (this == &o) return *this;
    std::scoped_lock lock(fill_mutex_, o.fill_mutex_);
    grid_ = o.grid_;
    spatial_ = std::move(o.spatial_);
    spectral_ = std::move(o.spectral_);
    has_spatial_ = o.has_spatial_;
    has_spectral_ = o.has_spectral_;
    return *this;
}

Signal convolve(const Signal& f, std::span<const cplx> g_hat) {
    if (g_hat.size() != f.grid().size())
        throw std::invalid_argument("convolve: filter size does not match grid");
    std::vector<cplx> prod(f.grid().size());
    kernels::active().cmul(f.spectral().data(), g_hat.data(), prod.data(), prod.size());
    return Signal::from_spectral(f.grid(), std::move(prod));
}

Signal modulus(const Signal& f) {
    std::vector<cplx> mag(f.grid().size());
    kernels::active().modulus(f.spatial().data(), mag.data(), mag.size());
    return Signal::from_spatial(f.grid(), std::move(mag));
}

double sobolev_norm(const Signal& f, double s) {
    if (s < 0.0) throw std::domain_error("sobolev_norm: s must be >= 0");
    const FrequencyGrid& g = f.grid();
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = std::pow(1.0 + g.frequency_norm2(i), s);
    double e = kernels::active().weighted_sq_norm(w.data(), f.spectral().data(), w.size());
    return std::sqrt(e * g.bin_measure());
}

std::vector<double> abs2_profile(std::span<const cplx> z) {
    std::vector<double> w(z.size(), 0.0);
    kernels::active().add_abs2(z.data(), w.data(), z.size());
    return w;
}

}  // namespace scatnet
