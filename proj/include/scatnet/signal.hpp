#pragma once

#include "scatnet/grid.hpp"

#include <mutex>
#include <span>
#include <vector>

namespace scatnet {

// A function on the grid with lazily synchronized spatial and spectral
// representations.  At least one domain is always valid; the other is filled
// on demand by the transform.  Fills are idempotent and race-safe, and norms
// agree across domains (discrete Parseval with measure weights).
class Signal {
public:
    static Signal from_spatial(const FrequencyGrid& grid, std::vector<cplx> data);
    static Signal from_spectral(const FrequencyGrid& grid, std::vector<cplx> data);

    const FrequencyGrid& grid() const { return grid_; }
    const std::vector<cplx>& spatial() const;
    const std::vector<cplx>& spectral() const;
    bool has_spatial() const;
    bool has_spectral() const;

    // Measure-weighted L2 norm, computed from whichever domain is valid
    // (spectral preferred when both are).
    double l2_norm() const;
    double energy() const;  // l2_norm squared

    Signal(const Signal& o);
    Signal& operator=(const Signal& o);
    Signal(Signal&&) noexcept;
    Signal& operator=(Signal&&) noexcept;

private:
    Signal(const FrequencyGrid& grid) : grid_(grid) {}

    FrequencyGrid grid_;
    mutable std::vector<cplx> spatial_, spectral_;
    mutable bool has_spatial_ = false, has_spectral_ = false;
    mutable std::mutex fill_mutex_;
};

// out = f * g via spectral multiplication (exact circular convolution under
// the grid's transform scaling).  g_hat is a spectral array on f's grid.
Signal convolve(const Signal& f, std::span<const cplx> g_hat);

// Pointwise spatial magnitude; preserves the L2 norm.
Signal modulus(const Signal& f);

// sqrt( sum |f_hat(w)|^2 (1+|w|^2)^s * bin_measure ); s = 0 gives l2_norm.
double sobolev_norm(const Signal& f, double s);

// |z|^2 table for a spectral array (weights for feature/band energies).
std::vector<double> abs2_profile(std::span<const cplx> z);

}  // namespace scatnet
