#pragma once

#include "scatnet/signal.hpp"

#include <utility>
#include <vector>

namespace scatnet {

// Dimension exponent of the polynomial energy-decay bound:
// alpha = 1 for d = 1, log2(sqrt(d/(d - 1/2))) for d >= 2.
double alpha_exponent(int d);

// r_l(t) = (1 - |t|)_+^l, the compactly supported positive-definite profile
// whose square forms the decay bracket 1 - r_l^2.
double r_hat_l(double t, double l);

// gamma = min(1, 2s): Sobolev-driven decay exponent.
double sobolev_decay_exponent(double s);

enum class BoundFamily { general, wavelet, weyl_heisenberg };

// Geometric frequency scale per added layer: 5/3 for the dyadic wavelet
// construction, 3/2 for the Weyl-Heisenberg one.
double family_base(BoundFamily family);

struct BoundParams {
    double l = 2.0;                   // profile order, must exceed floor(d/2) + 1
    double delta = 1.0;               // spectral gap of the bank
    std::vector<double> B_products;   // B^N for N = 1..depth (index N-1)
};

// Polynomial-family bound on the layer-N energy:
//   B^N * sum |f_hat(w)|^2 (1 - r_l(|w| / (N^alpha delta))^2) * bin_measure.
double bound_polynomial(const Signal& f, int N, const BoundParams& p);

// Exponential-family bound (1-D wavelet / Weyl-Heisenberg constructions):
//   sum |f_hat(w)|^2 (1 - r_l(|w| / (a^(N-1) delta))^2) * bin_measure,
// a = family base, delta = 1 (wavelet) or R (Weyl-Heisenberg).
double bound_exponential(const Signal& f, int N, BoundFamily family, double l, double delta);

// Least depth guaranteeing (1 - eps) of the energy of a band-limited signal
// (band L) lands in the output features, per family.
long layers_bandlimited(double L, double delta, double eps, double l, int d, BoundFamily family);

// Same for a Sobolev-class signal given ratio = ||f||_{H^s} / ||f||_2.
long layers_sobolev(double ratio, double s, double eps, double l, double delta, int d,
                    BoundFamily family);

// (prod min(1, A_k), prod max(1, B_k)) over the first N layers.
std::pair<double, double> frame_bound_products(const std::vector<std::pair<double, double>>& ab,
                                               int N);

}  // namespace scatnet
