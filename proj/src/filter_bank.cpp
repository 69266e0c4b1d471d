#include "scatnet/filter_bank.hpp"

#include "scatnet/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace scatnet {

namespace {

// C3 ramp: nu(0) = 0, nu(1) = 1, nu(t) + nu(1-t) = 1.
double meyer_nu(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * t * (35.0 - t * (84.0 - t * (70.0 - 20.0 * t)));
}

std::vector<double> band_power(const FilterBank& bank) {
    std::vector<double> p(bank.grid.size(), 0.0);
    const auto& ops = kernels::active();
    for (const auto& f : bank.bands) ops.add_abs2(f.spectral.data(), p.data(), p.size());
    return p;
}

double measured_gap(const FrequencyGrid& grid, const std::vector<double>& power, double gap_tol) {
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < power.size(); ++i)
        if (power[i] > gap_tol) delta = std::min(delta, std::sqrt(grid.frequency_norm2(i)));
    if (std::isinf(delta)) delta = std::sqrt(static_cast<double>(grid.dim())) * grid.omega_max();
    return delta;
}

std::vector<double> identity_rotation(int d) {
    std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i) * d + i] = 1.0;
    return a;
}

bool is_rotation(const std::vector<double>& a, int d, double tol) {
    if (a.size() != static_cast<std::size_t>(d) * d) return false;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double dot = 0.0;  // (A^T A)_ij
            for (int k = 0; k < d; ++k) dot += a[k * d + i] * a[k * d + j];
            if (std::abs(dot - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    return true;
}

}  // namespace

double meyer_psi_hat(double w) {
    if (w < 0.5 || w > 2.0) return 0.0;
    if (w <= 1.0) return std::sin(std::numbers::pi / 2.0 * meyer_nu(2.0 * w - 1.0));
    return std::cos(std::numbers::pi / 2.0 * meyer_nu(w - 1.0));
}

FilterBank FilterBank::assemble(const FrequencyGrid& grid, Filter chi, std::vector<Filter> bands,
                                double gap_tol) {
    if (chi.spectral.size() != grid.size())
        throw std::invalid_argument("FilterBank: chi size does not match grid");
    for (const auto& f : bands)
        if (f.spectral.size() != grid.size())
            throw std::invalid_argument("FilterBank: band filter size does not match grid");
    FilterBank bank{grid, std::move(chi), std::move(bands), {}, 0.0, 0.0, 0.0};
    bank.chi.label = FilterLabel{true, 0};
    bank.chi.role = FilterRole::output_generating;
    bank.lp.assign(grid.size(), 0.0);
    const auto& ops = kernels::active();
    ops.add_abs2(bank.chi.spectral.data(), bank.lp.data(), bank.lp.size());
    std::vector<double> bp = band_power(bank);
    for (std::size_t i = 0; i < bank.lp.size(); ++i) bank.lp[i] += bp[i];
    auto [mn, mx] = std::minmax_element(bank.lp.begin(), bank.lp.end());
    bank.A = *mn;
    bank.B = *mx;
    bank.delta = measured_gap(grid, bp, gap_tol);
    return bank;
}

FilterBank build_meyer_bank(const FrequencyGrid& grid, int j_max) {
    if (grid.dim() != 1) throw std::invalid_argument("build_meyer_bank: grid must be 1-D");
    if (j_max < 1) throw std::invalid_argument("build_meyer_bank: j_max must be >= 1");
    if (std::ldexp(1.0, j_max + 1) > grid.omega_max())
        throw std::invalid_argument("build_meyer_bank: need 2^(j_max+1) <= omega_max");
    std::size_t total = grid.size();
    std::vector<Filter> bands;
    std::vector<double> lp_bands(total, 0.0);
    for (int j = 1; j <= j_max; ++j) {
        for (int sign : {+1, -1}) {
            Filter f;
            f.label = FilterLabel{false, sign * j};
            f.role = FilterRole::band_pass;
            f.orthant = std::vector<double>{static_cast<double>(sign)};
            f.spectral.resize(total);
            double scale = std::ldexp(1.0, -j);
            for (std::size_t i = 0; i < total; ++i) {
                double w = grid.axis_frequency(static_cast<int>(i));
                double v = meyer_psi_hat(sign * scale * w);
                f.spectral[i] = v;
                lp_bands[i] += v * v;
            }
            bands.push_back(std::move(f));
        }
    }
    Filter chi;
    chi.spectral.resize(total);
    for (std::size_t i = 0; i < total; ++i)
        chi.spectral[i] = std::sqrt(std::max(0.0, 1.0 - lp_bands[i]));
    return FilterBank::assemble(grid, std::move(chi), std::move(bands));
}

FilterBank build_wh_bank(const FrequencyGrid& grid, double R, int k_max) {
    if (grid.dim() != 1) throw std::invalid_argument("build_wh_bank: grid must be 1-D");
    if (!(R > 0.0)) throw std::invalid_argument("build_wh_bank: R must be positive");
    if (k_max < 1) throw std::invalid_argument("build_wh_bank: k_max must be >= 1");
    if (R * (k_max + 2) > grid.omega_max())
        throw std::invalid_argument("build_wh_bank: need R*(k_max+2) <= omega_max");
    auto prototype = [R](double w) {
        double a = std::abs(w);
        if (a > R) return 0.0;
        return std::cos(std::numbers::pi * a / (2.0 * R));
    };
    std::size_t total = grid.size();
    std::vector<Filter> bands;
    std::vector<double> lp_bands(total, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        for (int sign : {+1, -1}) {
            Filter f;
            f.label = FilterLabel{false, sign * k};
            f.role = FilterRole::band_pass;
            f.orthant = std::vector<double>{static_cast<double>(sign)};
            f.spectral.resize(total);
            double shift = R * (k + 1);
            for (std::size_t i = 0; i < total; ++i) {
                double w = grid.axis_frequency(static_cast<int>(i));
                double v = prototype(sign > 0 ? w - shift : w + shift);
                f.spectral[i] = v;
                lp_bands[i] += v * v;
            }
            bands.push_back(std::move(f));
        }
    }
    Filter chi;
    chi.spectral.resize(total);
    for (std::size_t i = 0; i < total; ++i)
        chi.spectral[i] = std::sqrt(std::max(0.0, 1.0 - lp_bands[i]));
    return FilterBank::assemble(grid, std::move(chi), std::move(bands));
}

FilterBank build_counterexample_bank(const FrequencyGrid& grid) {
    if (grid.omega_max() < 2.0)
        throw std::invalid_argument("build_counterexample_bank: need omega_max >= 2");
    std::size_t total = grid.size();
    Filter g0, g1, chi;
    g0.label = FilterLabel{false, 0};
    g1.label = FilterLabel{false, 1};
    g0.spectral.resize(total);
    g1.spectral.resize(total);
    chi.spectral.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        double r = std::sqrt(grid.frequency_norm2(i));
        g0.spectral[i] = r <= 1.0 ? 1.0 : 0.0;
        chi.spectral[i] = (r > 1.0 && r <= 2.0) ? 1.0 : 0.0;
        g1.spectral[i] = r > 2.0 ? 1.0 : 0.0;
    }
    std::vector<Filter> bands;
    bands.push_back(std::move(g0));
    bands.push_back(std::move(g1));
    return FilterBank::assemble(grid, std::move(chi), std::move(bands));
}

FilterBank build_orthant_ring_bank(const FrequencyGrid& grid, const std::vector<double>& edges) {
    if (edges.size() < 2)
        throw std::invalid_argument("build_orthant_ring_bank: need at least two ring edges");
    if (!(edges.front() > 0.0))
        throw std::invalid_argument("build_orthant_ring_bank: edges must be positive");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument("build_orthant_ring_bank: edges must be increasing");
    int d = grid.dim();
    int orthants = 1 << d;
    std::size_t total = grid.size();
    std::vector<Filter> bands;
    for (std::size_t ring = 0; ring + 1 < edges.size(); ++ring) {
        for (int o = 0; o < orthants; ++o) {
            Filter f;
            f.label = FilterLabel{false, static_cast<int>(ring) * orthants + o + 1};
            f.role = FilterRole::band_pass;
            std::vector<double> rot(static_cast<std::size_t>(d) * d, 0.0);
            for (int a = 0; a < d; ++a)
                rot[static_cast<std::size_t>(a) * d + a] = (o >> a) & 1 ? -1.0 : 1.0;
            f.orthant = std::move(rot);
            f.spectral.assign(total, 0.0);
            bands.push_back(std::move(f));
        }
    }
    Filter chi;
    chi.spectral.assign(total, 0.0);
    double w[2];
    for (std::size_t i = 0; i < total; ++i) {
        grid.frequency(i, w);
        double r = std::sqrt(grid.frequency_norm2(i));
        if (r < edges.front() || r >= edges.back()) {
            chi.spectral[i] = 1.0;
            continue;
        }
        std::size_t ring = 0;
        while (r >= edges[ring + 1]) ++ring;
        int o = 0;
        for (int a = 0; a < d; ++a)
            if (w[a] < 0.0) o |= 1 << a;
        bands[ring * orthants + o].spectral[i] = 1.0;
    }
    return FilterBank::assemble(grid, std::move(chi), std::move(bands));
}

std::pair<double, double> frame_bounds(const FilterBank& bank) {
    std::vector<double> lp(bank.grid.size(), 0.0);
    const auto& ops = kernels::active();
    ops.add_abs2(bank.chi.spectral.data(), lp.data(), lp.size());
    for (const auto& f : bank.bands) ops.add_abs2(f.spectral.data(), lp.data(), lp.size());
    auto [mn, mx] = std::minmax_element(lp.begin(), lp.end());
    return {*mn, *mx};
}

FilterBank normalize_to_parseval(const FilterBank& bank, double underflow_tol) {
    std::vector<double> scale(bank.lp.size());
    for (std::size_t i = 0; i < scale.size(); ++i)
        scale[i] = bank.lp[i] < underflow_tol ? 0.0 : 1.0 / std::sqrt(bank.lp[i]);
    const auto& ops = kernels::active();
    Filter chi = bank.chi;
    ops.mul_real(bank.chi.spectral.data(), scale.data(), chi.spectral.data(), scale.size());
    std::vector<Filter> bands = bank.bands;
    for (std::size_t k = 0; k < bands.size(); ++k)
        ops.mul_real(bank.bands[k].spectral.data(), scale.data(), bands[k].spectral.data(),
                     scale.size());
    return FilterBank::assemble(bank.grid, std::move(chi), std::move(bands));
}

AssumptionReport check_assumption1(const FilterBank& bank, double support_tol, double gap_tol) {
    const FrequencyGrid& grid = bank.grid;
    int d = grid.dim();
    int n = grid.samples_per_axis();
    double slack = support_tol * grid.omega_max();
    AssumptionReport report;

    std::vector<std::vector<double>> reflections;
    for (int o = 0; o < (1 << d); ++o) {
        std::vector<double> rot(static_cast<std::size_t>(d) * d, 0.0);
        for (int a = 0; a < d; ++a)
            rot[static_cast<std::size_t>(a) * d + a] = (o >> a) & 1 ? -1.0 : 1.0;
        reflections.push_back(std::move(rot));
    }

    for (const auto& f : bank.bands) {
        FilterAssumptionVerdict v;
        v.label = f.label;

        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < f.spectral.size(); ++i)
            if (std::abs(f.spectral[i]) > support_tol) support.push_back(i);
        if (support.empty()) {
            v.verdict = OrthantVerdict::pass;
            v.orthant = f.orthant ? *f.orthant : identity_rotation(d);
            v.note = "empty support";
            report.filters.push_back(std::move(v));
            continue;
        }

        std::vector<std::vector<double>> candidates;
        if (f.orthant) {
            if (!is_rotation(*f.orthant, d, 1e-9))
                throw std::invalid_argument("check_assumption1: orthant tag of filter " +
                                            f.label.str() + " is not a rotation");
            candidates.push_back(*f.orthant);
        }
        for (const auto& r : reflections) candidates.push_back(r);

        double w[2];
        for (const auto& a : candidates) {
            bool ok = true;
            for (std::size_t idx : support) {
                grid.frequency(idx, w);
                for (int row = 0; row < d && ok; ++row) {
                    double comp = 0.0;  // (A^T w)_row
                    for (int k = 0; k < d; ++k) comp += a[k * d + row] * w[k];
                    if (comp < -slack) ok = false;
                }
                if (!ok) break;
            }
            if (ok) {
                v.verdict = OrthantVerdict::pass;
                v.orthant = a;
                break;
            }
        }

        if (v.verdict != OrthantVerdict::pass) {
            if (d == 1) {
                v.verdict = OrthantVerdict::fail;
                v.note = "support meets both half-lines";
            } else {
                // An interior antipodal pair rules out every rotated orthant.
                std::vector<char> flag(grid.size(), 0);
                for (std::size_t idx : support) flag[idx] = 1;
                v.verdict = OrthantVerdict::undetermined;
                v.note = "no candidate orthant certifies the support";
                for (std::size_t idx : support) {
                    grid.frequency(idx, w);
                    if (std::abs(w[0]) <= slack || std::abs(w[1]) <= slack) continue;
                    int m0 = static_cast<int>(idx) / n, m1 = static_cast<int>(idx) % n;
                    if (m0 == n / 2 || m1 == n / 2) continue;  // -omega_max bin has no mirror
                    std::size_t mirror = static_cast<std::size_t>((n - m0) % n) * n + (n - m1) % n;
                    if (flag[mirror]) {
                        v.verdict = OrthantVerdict::fail;
                        v.note = "support contains an interior antipodal pair";
                        break;
                    }
                }
            }
        }
        report.filters.push_back(std::move(v));
    }

    report.delta = measured_gap(grid, band_power(bank), gap_tol);
    bool all_pass = true;
    for (const auto& v : report.filters)
        if (v.verdict != OrthantVerdict::pass) all_pass = false;
    report.pass = all_pass && report.delta > 0.0;
    return report;
}

Signal convolve(const Signal& f, const Filter& g) {
    return convolve(f, std::span<const cplx>(g.spectral));
}

}  // namespace scatnet
