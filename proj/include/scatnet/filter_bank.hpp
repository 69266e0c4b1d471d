#pragma once

#include "scatnet/signal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scatnet {

// Band filters carry an integer index; the output-generating filter is "chi".
struct FilterLabel {
    bool is_chi = false;
    int index = 0;
    std::string str() const { return is_chi ? "chi" : std::to_string(index); }
    bool operator==(const FilterLabel&) const = default;
};

enum class FilterRole { band_pass, output_generating };

struct Filter {
    FilterLabel label;
    FilterRole role = FilterRole::band_pass;
    std::vector<cplx> spectral;                   // on the bank's grid, FFT order
    std::optional<std::vector<double>> orthant;   // row-major dim x dim rotation A
};

// One semi-discrete module: output filter chi plus band filters, with its
// Littlewood-Paley profile lp(w) = |chi(w)|^2 + sum |g(w)|^2 and measured
// frame bounds A = min lp, B = max lp.  delta is the measured spectral gap:
// the radius below which the band filters carry no energy (chi excluded).
struct FilterBank {
    FrequencyGrid grid;
    Filter chi;
    std::vector<Filter> bands;
    std::vector<double> lp;
    double A = 0.0;
    double B = 0.0;
    double delta = 0.0;

    // Computes lp/A/B/delta from the filters.  gap_tol is the power level
    // below which a bin counts as empty for the gap scan.
    static FilterBank assemble(const FrequencyGrid& grid, Filter chi, std::vector<Filter> bands,
                               double gap_tol = 1e-9);
};

// Dyadic Meyer wavelet bank: g_{+j}(w) = psi(2^-j w), g_{-j}(w) = psi(-2^-j w)
// for j = 1..j_max with supp(psi) in [1/2, 2]; chi is the Littlewood-Paley
// residual square root, so lp == 1 on every bin.  Requires 2^(j_max+1) <= omega_max.
FilterBank build_meyer_bank(const FrequencyGrid& grid, int j_max);

// Meyer mother wavelet profile on the line (zero outside [1/2, 2]).
double meyer_psi_hat(double w);

// Weyl-Heisenberg bank from the cosine prototype g(w) = cos(pi w / (2R)) on
// [-R, R]: g_k(w) = g(w - R(k+1)) for k >= 1 and mirrored for k <= -1, so
// supp(g_k) = [Rk, R(k+2)].  Requires R(k_max+2) <= omega_max.
FilterBank build_wh_bank(const FrequencyGrid& grid, double R, int k_max);

// Appendix-style null-set bank: g_0 = 1 on |w| <= 1, chi = 1 on 1 < |w| <= 2,
// g_1 = 1 on |w| > 2.  A Parseval frame that violates the spectral-gap and
// orthant assumptions (g_0 covers the origin).  Works in any dimension.
FilterBank build_counterexample_bank(const FrequencyGrid& grid);

// d-dimensional indicator bank: one filter per (ring, orthant) cell with
// rings [edges[i], edges[i+1]) and sign-pattern orthants; chi is the residual
// (ball |w| < edges.front() plus everything beyond edges.back()).  Exactly
// Parseval and satisfies the gap/orthant assumptions with delta = edges.front().
FilterBank build_orthant_ring_bank(const FrequencyGrid& grid, const std::vector<double>& edges);

// Recomputed (A, B) = (min, max) of the Littlewood-Paley profile.
std::pair<double, double> frame_bounds(const FilterBank& bank);

// Divides every filter by sqrt(lp); bins with lp < underflow_tol are zeroed.
// For banks with A > 0 the result has lp == 1 on every bin.  Idempotent.
FilterBank normalize_to_parseval(const FilterBank& bank, double underflow_tol = 1e-12);

enum class OrthantVerdict { pass, fail, undetermined };

struct FilterAssumptionVerdict {
    FilterLabel label;
    OrthantVerdict verdict = OrthantVerdict::undetermined;
    std::optional<std::vector<double>> orthant;   // certifying rotation when verdict == pass
    std::string note;
};

struct AssumptionReport {
    std::vector<FilterAssumptionVerdict> filters;
    double delta = 0.0;   // measured collective gap of the band filters
    bool pass = false;    // all band filters pass and the gap is nonempty
};

// Checks the admissibility assumption: every band filter supported in a
// rotated orthant (candidates: the declared tag plus all axis-aligned sign
// reflections) and the collective spectrum empty on a ball around 0.
// In 1-D the candidate set is exhaustive, so verdicts are definitive; in 2-D
// a support containing an interior antipodal pair is a definite fail and
// anything else uncertified reports undetermined.
AssumptionReport check_assumption1(const FilterBank& bank, double support_tol = 1e-9,
                                   double gap_tol = 1e-9);

// Filter-level convolution wrapper.
Signal convolve(const Signal& f, const Filter& g);

}  // namespace scatnet
