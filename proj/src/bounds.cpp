#include "scatnet/bounds.hpp"

#include "scatnet/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace scatnet {

namespace {

void check_profile_order(double l, int d) {
    if (!(l > d / 2 + 1))
        throw std::domain_error("bound: profile order l must exceed floor(d/2) + 1");
}

// ceil with a 1e-12 nudge toward -inf so values that are integers up to
// roundoff do not get bumped a whole step.
long nudged_ceil(long double x) {
    long double c = std::ceil(x - 1e-12L);
    if (c < 0.0L) return 0;
    return static_cast<long>(c);
}

double bracket_integral(const Signal& f, double scale, double l) {
    const FrequencyGrid& g = f.grid();
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double r = r_hat_l(std::sqrt(g.frequency_norm2(i)) / scale, l);
        w[i] = 1.0 - r * r;
    }
    double e = kernels::active().weighted_sq_norm(w.data(), f.spectral().data(), w.size());
    return e * g.bin_measure();
}

}  // namespace

double alpha_exponent(int d) {
    if (d < 1) throw std::domain_error("alpha_exponent: d must be >= 1");
    if (d == 1) return 1.0;
    return std::log2(std::sqrt(d / (d - 0.5)));
}

double r_hat_l(double t, double l) {
    double base = 1.0 - std::abs(t);
    if (base <= 0.0) return 0.0;
    return std::pow(base, l);
}

double sobolev_decay_exponent(double s) {
    if (!(s > 0.0)) throw std::domain_error("sobolev_decay_exponent: s must be positive");
    return std::min(1.0, 2.0 * s);
}

double family_base(BoundFamily family) {
    switch (family) {
        case BoundFamily::wavelet: return 5.0 / 3.0;
        case BoundFamily::weyl_heisenberg: return 3.0 / 2.0;
        default: throw std::domain_error("family_base: general family has no geometric base");
    }
}

double bound_polynomial(const Signal& f, int N, const BoundParams& p) {
    if (N < 1) throw std::domain_error("bound_polynomial: N must be >= 1");
    int d = f.grid().dim();
    check_profile_order(p.l, d);
    if (!(p.delta > 0.0)) throw std::domain_error("bound_polynomial: delta must be positive");
    if (p.B_products.size() < static_cast<std::size_t>(N))
        throw std::invalid_argument("bound_polynomial: missing B_products up to N");
    double scale = std::pow(static_cast<double>(N), alpha_exponent(d)) * p.delta;
    return p.B_products[N - 1] * bracket_integral(f, scale, p.l);
}

double bound_exponential(const Signal& f, int N, BoundFamily family, double l, double delta) {
    if (N < 1) throw std::domain_error("bound_exponential: N must be >= 1");
    if (f.grid().dim() != 1)
        throw std::domain_error("bound_exponential: wavelet/WH families are 1-D constructions");
    if (!(l > 1.0)) throw std::domain_error("bound_exponential: need l > 1");
    if (!(delta > 0.0)) throw std::domain_error("bound_exponential: delta must be positive");
    double scale = std::pow(family_base(family), N - 1) * delta;
    return bracket_integral(f, scale, l);
}

long layers_bandlimited(double L, double delta, double eps, double l, int d, BoundFamily family) {
    if (!(L > 0.0)) throw std::domain_error("layers_bandlimited: L must be positive");
    if (!(delta > 0.0)) throw std::domain_error("layers_bandlimited: delta must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("layers_bandlimited: eps must be in (0,1)");
    if (!(l > 1.0)) throw std::domain_error("layers_bandlimited: need l > 1");
    if (family == BoundFamily::general) check_profile_order(l, d);
    long double factor = 1.0L - std::pow(static_cast<long double>(1.0 - eps),
                                         1.0L / (2.0L * static_cast<long double>(l)));
    long double x = static_cast<long double>(L) / (factor * static_cast<long double>(delta));
    if (family == BoundFamily::general)
        return nudged_ceil(std::pow(x, 1.0L / static_cast<long double>(alpha_exponent(d))) - 1.0L);
    long double a = static_cast<long double>(family_base(family));
    return nudged_ceil(std::log(x) / std::log(a));
}

long layers_sobolev(double ratio, double s, double eps, double l, double delta, int d,
                    BoundFamily family) {
    if (!(ratio > 0.0)) throw std::domain_error("layers_sobolev: norm ratio must be positive");
    if (!(delta > 0.0)) throw std::domain_error("layers_sobolev: delta must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("layers_sobolev: eps must be in (0,1)");
    if (!(l > 1.0)) throw std::domain_error("layers_sobolev: need l > 1");
    if (family == BoundFamily::general) check_profile_order(l, d);
    long double gamma = static_cast<long double>(sobolev_decay_exponent(s));
    long double x = 2.0L * static_cast<long double>(l) *
                    std::pow(static_cast<long double>(ratio), 2.0L / gamma) /
                    (std::pow(static_cast<long double>(eps), 1.0L / gamma) *
                     static_cast<long double>(delta));
    if (family == BoundFamily::general)
        return nudged_ceil(std::pow(x, 1.0L / static_cast<long double>(alpha_exponent(d))) - 1.0L);
    long double a = static_cast<long double>(family_base(family));
    return nudged_ceil(std::log(x) / std::log(a));
}

std::pair<double, double> frame_bound_products(const std::vector<std::pair<double, double>>& ab,
                                               int N) {
    if (N < 0) throw std::domain_error("frame_bound_products: N must be >= 0");
    if (ab.size() < static_cast<std::size_t>(N))
        throw std::invalid_argument("frame_bound_products: fewer layers than N");
    double a = 1.0, b = 1.0;
    for (int k = 0; k < N; ++k) {
        a *= std::min(1.0, ab[k].first);
        b *= std::max(1.0, ab[k].second);
    }
    return {a, b};
}

}  // namespace scatnet
