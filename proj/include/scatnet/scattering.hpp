#pragma once

#include "scatnet/filter_bank.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace scatnet {

// Band-filter labels along one branch of the network, root first.
struct Path {
    std::vector<int> labels;
    std::string str() const;  // "e" for the root, else dot-separated labels
};

struct PathRecord {
    Path path;
    double map_energy = 0.0;      // ||U[q]f||^2
    double feature_energy = 0.0;  // ||(U[q]f) * chi_{n+1}||^2 when has_feature
    bool has_feature = false;
    bool pruned = false;
};

// Per-layer filter banks.  A single-bank sequence repeats it at every layer;
// an explicit list can optionally repeat its last bank beyond the list.
class ModuleSequence {
public:
    explicit ModuleSequence(FilterBank bank);
    ModuleSequence(std::vector<FilterBank> layers, bool repeat_last = false);

    const FilterBank& layer(int n) const;  // 1-based
    bool has_layer(int n) const;
    const FrequencyGrid& grid() const { return layers_.front().grid; }

    // (prod min(1, A_k), prod max(1, B_k)) over layers 1..N.
    std::pair<double, double> products(int N) const;

private:
    std::vector<FilterBank> layers_;
    bool repeat_;
};

struct ScatterOptions {
    int depth = 3;
    double prune_tol = 1e-8;     // relative to input energy; 0 disables pruning
    int threads = 1;             // worker count; never affects the output bits
    std::size_t path_cap = 10000;
};

// W[n] = sum of ||U[q]f||^2 over computed paths at layer n (n = 0..depth);
// F[n] = sum of feature energies at layer n (n < depth; depth 0 still emits
// F[0] = ||f * chi_1||^2); pruned[n] = energy of nodes cut at layer n after
// being counted in W[n].  Identically-zero branches are skipped outright,
// which changes no sums.  per_path is kept only while the record count stays
// within path_cap.
struct ScatteringResult {
    int depth = 0;
    double input_energy = 0.0;
    std::vector<double> W;
    std::vector<double> F;
    std::vector<double> pruned;
    std::vector<PathRecord> per_path;
    bool per_path_complete = false;
};

// Depth-first network evaluation.  Energies accumulate in canonical path
// order (lexicographic in per-layer filter positions) regardless of the
// worker count, so reruns are bitwise reproducible.
ScatteringResult run_scattering(const ModuleSequence& seq, const Signal& f,
                                const ScatterOptions& opt);

// One module application along a branch: |f * g|.
Signal propagate_node(const Signal& f, const Filter& g);
// Output map of a node: f * chi.
Signal extract_feature(const Signal& f, const Filter& chi);

struct DecompositionRow {
    int N = 0;
    double lower = 0.0;   // A^N * ||f||^2
    double middle = 0.0;  // sum_{n<N} F[n] + W[N]
    double upper = 0.0;   // B^N * ||f||^2
    double slack = 0.0;   // pruned energy at layers < N
    bool pass = false;
};

struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    double tol = 0.0;
    bool pass = false;
};

// Checks A^N ||f||^2 <= sum_{n<N} |||Phi^n|||^2 + W_N <= B^N ||f||^2 for each
// N <= depth, within tol * ||f||^2 plus the pruned slack on the lower side.
DecompositionReport energy_decomposition_report(const ModuleSequence& seq,
                                                const ScatteringResult& res, double tol = 1e-6);

struct DemodReport {
    double band_energy = 0.0;         // ||f * g||^2
    double low_fraction_before = 0.0; // energy fraction of f * g at |w| < delta
    double low_fraction_after = 0.0;  // same for |f * g|
};

// Measures how the modulus moves band-pass energy into the low band.
DemodReport demodulation_metrics(const Signal& f, const Filter& g, double delta);

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

void write_result_csv(std::ostream& os, const ScatteringResult& res, const ConfigEcho& config);
nlohmann::json result_to_json(const ScatteringResult& res, const ConfigEcho& config);

}  // namespace scatnet
