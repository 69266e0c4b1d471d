#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scatnet {

using cplx = std::complex<double>;

// Periodic frequency lattice {-omega_max + k*spacing : k = 0..n-1} per axis,
// spacing = 2*omega_max/n.  Arrays over the grid are stored in FFT order
// (DC at flat index 0, axis 0 slowest for dim 2); axis index n/2 carries
// the -omega_max bin.  The dual spatial lattice is {k*dx : k = 0..n-1} with
// dx = 1/(2*omega_max), so dx * spacing * n = 1 and the measure-weighted
// discrete Parseval identity is exact.
class FrequencyGrid {
public:
    FrequencyGrid(int dim, int samples_per_axis, double omega_max)
        : dim_(dim), n_(samples_per_axis), omega_max_(omega_max) {
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("FrequencyGrid: dim must be 1 or 2");
        if (n_ < 8 || (n_ & (n_ - 1)) != 0)
            throw std::invalid_argument("FrequencyGrid: samples_per_axis must be a power of two >= 8");
        if (!(omega_max > 0.0))
            throw std::invalid_argument("FrequencyGrid: omega_max must be positive");
    }

    int dim() const { return dim_; }
    int samples_per_axis() const { return n_; }
    std::size_t size() const {
        std::size_t s = static_cast<std::size_t>(n_);
        return dim_ == 1 ? s : s * s;
    }
    double omega_max() const { return omega_max_; }
    double spacing() const { return 2.0 * omega_max_ / n_; }
    double spatial_step() const { return 1.0 / (2.0 * omega_max_); }
    double spatial_period() const { return n_ * spatial_step(); }

    // Quadrature weights: one bin in the respective domain.
    double bin_measure() const { return dim_ == 1 ? spacing() : spacing() * spacing(); }
    double spatial_measure() const {
        double dx = spatial_step();
        return dim_ == 1 ? dx : dx * dx;
    }

    // Signed frequency of an FFT-order axis index.
    double axis_frequency(int idx) const {
        int m = idx < n_ / 2 ? idx : idx - n_;
        return m * spacing();
    }
    // Spatial coordinate of an axis index.
    double axis_coordinate(int idx) const { return idx * spatial_step(); }

    void frequency(std::size_t flat, double* out) const {
        if (dim_ == 1) {
            out[0] = axis_frequency(static_cast<int>(flat));
        } else {
            out[0] = axis_frequency(static_cast<int>(flat / n_));
            out[1] = axis_frequency(static_cast<int>(flat % n_));
        }
    }
    double frequency_norm2(std::size_t flat) const {
        double w[2];
        frequency(flat, w);
        return dim_ == 1 ? w[0] * w[0] : w[0] * w[0] + w[1] * w[1];
    }

    // FFT-order flat index of the bin at ascending-frequency position
    // (a = 0 is -omega_max); used by the columnar text format.
    std::size_t flat_from_ascending(std::size_t a) const {
        if (dim_ == 1) return (a + n_ / 2) % n_;
        std::size_t a0 = a / n_, a1 = a % n_;
        return ((a0 + n_ / 2) % n_) * n_ + (a1 + n_ / 2) % n_;
    }

    bool operator==(const FrequencyGrid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && omega_max_ == o.omega_max_;
    }
    bool operator!=(const FrequencyGrid& o) const { return !(*this == o); }

private:
    int dim_;
    int n_;
    double omega_max_;
};

}  // namespace scatnet
