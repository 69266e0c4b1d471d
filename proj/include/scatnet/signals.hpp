#pragma once

#include "scatnet/signal.hpp"

#include <cstdint>
#include <vector>

namespace scatnet {

// Unit-norm signal with a random smooth spectrum supported in |w| <= L
// (complex Gaussian bins under a cosine-squared taper that vanishes at L).
Signal gen_bandlimited(const FrequencyGrid& grid, double L, std::uint64_t seed);

// Unit-norm signal with |f_hat(w)| proportional to (1+|w|^2)^-((s+d/2+margin)/2)
// and random phases.  A C1 taper kills the envelope above omega_max/2 so the
// top octave carries no energy and the Sobolev norm is refinement-stable.
Signal gen_sobolev(const FrequencyGrid& grid, double s, std::uint64_t seed, double margin = 0.25);

// The null-set witness: f_hat(w) = (1 - |w|)_+^l exactly on the grid.  Its
// spatial samples are real and nonnegative (positive-definite profile), so
// the modulus fixes it.  Not normalized.  Requires omega_max >= 2 and
// l > floor(d/2) + 1.
Signal gen_counterexample_signal(const FrequencyGrid& grid, double l);

struct GaussianBlob {
    double amp = 1.0;
    double x0 = 0.0, y0 = 0.0;  // center, spatial units in [0, period)
    double sigma = 1.0;
};

// Cartoon function f = f1 + 1_D * f2 on the 2-D torus: smooth components
// plus a disk-masked smooth component; K bounds both sup|f2| and the
// boundary length 2*pi*radius.
struct CartoonSpec {
    std::vector<GaussianBlob> f1;
    std::vector<GaussianBlob> f2;
    double f2_constant = 0.0;
    double cx = 0.0, cy = 0.0, radius = 0.0;
    double size_K = 0.0;

    static CartoonSpec random(const FrequencyGrid& grid, std::uint64_t seed);
};

// Rasterizes the cartoon on the spatial lattice.  Errors if the disk does
// not fit strictly inside the period or a size-K invariant fails on the raster.
Signal gen_cartoon2d(const FrequencyGrid& grid, const CartoonSpec& spec);

// Energy fraction at per-axis frequencies |w_i| >= omega_max/2; experiments
// treat > 1e-6 as an aliasing hazard (cartoons are expected to trip this).
double top_octave_energy_fraction(const Signal& f);

}  // namespace scatnet
