#include "scatnet/scattering.hpp"

#include "scatnet/bounds.hpp"
#include "scatnet/fft.hpp"
#include "scatnet/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace scatnet {

std::string Path::str() const {
    if (labels.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(labels[i]);
    }
    return s;
}

ModuleSequence::ModuleSequence(FilterBank bank) : repeat_(true) {
    layers_.push_back(std::move(bank));
}

ModuleSequence::ModuleSequence(std::vector<FilterBank> layers, bool repeat_last)
    : layers_(std::move(layers)), repeat_(repeat_last) {
    if (layers_.empty()) throw std::invalid_argument("ModuleSequence: no layers");
    for (const auto& b : layers_)
        if (b.grid != layers_.front().grid)
            throw std::invalid_argument("ModuleSequence: layers live on different grids");
}

bool ModuleSequence::has_layer(int n) const {
    return n >= 1 && (repeat_ || n <= static_cast<int>(layers_.size()));
}

const FilterBank& ModuleSequence::layer(int n) const {
    if (!has_layer(n)) throw std::out_of_range("ModuleSequence: layer beyond sequence");
    std::size_t idx = std::min<std::size_t>(n - 1, layers_.size() - 1);
    return layers_[idx];
}

std::pair<double, double> ModuleSequence::products(int N) const {
    std::vector<std::pair<double, double>> ab;
    for (int k = 1; k <= N; ++k) ab.emplace_back(layer(k).A, layer(k).B);
    return frame_bound_products(ab, N);
}

namespace {

struct Accum {
    std::vector<double> W, F, pruned;
    std::vector<PathRecord> paths;
    std::size_t count = 0;

    Accum(int depth, std::size_t cap_hint)
        : W(depth + 1, 0.0), F(std::max(depth, 1), 0.0), pruned(depth + 1, 0.0) {
        paths.reserve(std::min<std::size_t>(cap_hint, 1024));
    }
};

struct EngineCtx {
    const FrequencyGrid* grid;
    int depth;
    double prune_abs;
    double dx_meas, dw_meas;
    std::size_t total;
    std::vector<const FilterBank*> banks;        // banks[n-1] drives layer n
    std::vector<std::vector<double>> chi_abs2;   // chi_abs2[n] = |chi_{n+1}|^2 (layer-n features)
    std::size_t path_cap;
};

struct Workspace {
    std::vector<std::vector<cplx>> prod, spat, spec;
    Workspace(int depth, std::size_t total)
        : prod(depth + 1), spat(depth + 1), spec(depth + 1) {
        for (int i = 1; i <= depth; ++i) {
            prod[i].resize(total);
            spat[i].resize(total);
            spec[i].resize(total);
        }
    }
};

void record(const EngineCtx& c, Accum& acc, const std::vector<int>& path, double map_e,
            double feat_e, bool has_feat, bool pruned) {
    ++acc.count;
    if (acc.count > c.path_cap) return;  // still counted; storage stops past the cap
    PathRecord r;
    r.path.labels = path;
    r.map_energy = map_e;
    r.feature_energy = feat_e;
    r.has_feature = has_feat;
    r.pruned = pruned;
    acc.paths.push_back(std::move(r));
}

void expand(const EngineCtx& c, Workspace& ws, const std::vector<cplx>& parent_spec,
            int parent_layer, std::vector<int>& path, Accum& acc);

// One child of a node: convolve with g, take the modulus, account energy,
// then extract its feature and recurse unless it is a leaf or pruned.
void process_child(const EngineCtx& c, Workspace& ws, const std::vector<cplx>& parent_spec,
                   int parent_layer, const Filter& g, std::vector<int>& path, Accum& acc) {
    const auto& ops = kernels::active();
    int layer = parent_layer + 1;
    auto& prod = ws.prod[layer];
    auto& spat = ws.spat[layer];
    auto& spec = ws.spec[layer];
    ops.cmul(parent_spec.data(), g.spectral.data(), prod.data(), c.total);
    fft::backward(*c.grid, prod.data(), spat.data());
    ops.modulus(spat.data(), spat.data(), c.total);
    double e = ops.sq_norm(spat.data(), c.total) * c.dx_meas;
    if (e == 0.0) return;  // exact-zero branch: its whole subtree contributes nothing
    acc.W[layer] += e;
    path.push_back(g.label.index);
    if (e < c.prune_abs) {
        acc.pruned[layer] += e;
        record(c, acc, path, e, 0.0, false, true);
    } else if (layer == c.depth) {
        record(c, acc, path, e, 0.0, false, false);
    } else {
        fft::forward(*c.grid, spat.data(), spec.data());
        double feat =
            ops.weighted_sq_norm(c.chi_abs2[layer].data(), spec.data(), c.total) * c.dw_meas;
        acc.F[layer] += feat;
        record(c, acc, path, e, feat, true, false);
        expand(c, ws, spec, layer, path, acc);
    }
    path.pop_back();
}

void expand(const EngineCtx& c, Workspace& ws, const std::vector<cplx>& parent_spec,
            int parent_layer, std::vector<int>& path, Accum& acc) {
    const FilterBank& bank = *c.banks[parent_layer];
    for (const Filter& g : bank.bands)
        process_child(c, ws, parent_spec, parent_layer, g, path, acc);
}

}  // namespace

ScatteringResult run_scattering(const ModuleSequence& seq, const Signal& f,
                                const ScatterOptions& opt) {
    if (opt.depth < 0) throw std::invalid_argument("run_scattering: depth must be >= 0");
    if (opt.prune_tol < 0.0) throw std::invalid_argument("run_scattering: prune_tol must be >= 0");
    if (f.grid() != seq.grid())
        throw std::invalid_argument("run_scattering: signal and banks live on different grids");
    int feature_layers = std::max(opt.depth, 1);
    for (int n = 1; n <= feature_layers; ++n)
        if (!seq.has_layer(n))
            throw std::invalid_argument("run_scattering: depth exceeds available layers");

    const FrequencyGrid& grid = f.grid();
    EngineCtx ctx;
    ctx.grid = &grid;
    ctx.depth = opt.depth;
    ctx.dx_meas = grid.spatial_measure();
    ctx.dw_meas = grid.bin_measure();
    ctx.total = grid.size();
    ctx.path_cap = opt.path_cap;
    for (int n = 1; n <= opt.depth; ++n) ctx.banks.push_back(&seq.layer(n));
    ctx.chi_abs2.resize(opt.depth);
    for (int n = 0; n < std::max(opt.depth, 1); ++n) {
        if (n >= static_cast<int>(ctx.chi_abs2.size())) ctx.chi_abs2.resize(n + 1);
        ctx.chi_abs2[n] = abs2_profile(seq.layer(n + 1).chi.spectral);
    }

    const auto& ops = kernels::active();
    const std::vector<cplx>& fspec = f.spectral();
    double e_in = ops.sq_norm(fspec.data(), ctx.total) * ctx.dw_meas;
    ctx.prune_abs = opt.prune_tol * e_in;

    ScatteringResult res;
    res.depth = opt.depth;
    res.input_energy = e_in;
    res.W.assign(opt.depth + 1, 0.0);
    res.F.assign(std::max(opt.depth, 1), 0.0);
    res.pruned.assign(opt.depth + 1, 0.0);

    res.W[0] = e_in;
    double f0 = ops.weighted_sq_norm(ctx.chi_abs2[0].data(), fspec.data(), ctx.total) * ctx.dw_meas;
    res.F[0] = f0;

    std::size_t total_count = 1;
    std::vector<PathRecord> root_record(1);
    root_record[0].path = Path{};
    root_record[0].map_energy = e_in;
    root_record[0].feature_energy = f0;
    root_record[0].has_feature = true;

    std::vector<Accum> accs;
    if (opt.depth >= 1) {
        const auto& first_bands = ctx.banks[0]->bands;
        std::size_t jobs = first_bands.size();
        accs.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) accs.emplace_back(opt.depth, ctx.path_cap);

        auto run_job = [&](std::size_t j, Workspace& ws) {
            std::vector<int> path;
            process_child(ctx, ws, fspec, 0, first_bands[j], path, accs[j]);
        };

        int threads = std::max(1, opt.threads);
        if (threads == 1 || jobs <= 1) {
            Workspace ws(opt.depth, ctx.total);
            for (std::size_t j = 0; j < jobs; ++j) run_job(j, ws);
        } else {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                Workspace ws(opt.depth, ctx.total);
                for (;;) {
                    std::size_t j = next.fetch_add(1);
                    if (j >= jobs) break;
                    run_job(j, ws);
                }
            };
            std::vector<std::thread> pool;
            int nw = std::min<int>(threads, static_cast<int>(jobs));
            pool.reserve(nw);
            for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        // Canonical reduction: first-layer filter order, then DFS order inside
        // each subtree.  Identical for every worker count.
        for (const Accum& a : accs) {
            for (int n = 0; n <= opt.depth; ++n) {
                res.W[n] += a.W[n];
                res.pruned[n] += a.pruned[n];
            }
            for (std::size_t n = 0; n < res.F.size(); ++n) res.F[n] += a.F[n];
            total_count += a.count;
        }
    }

    res.per_path_complete = total_count <= ctx.path_cap;
    if (res.per_path_complete) {
        res.per_path = std::move(root_record);
        for (Accum& a : accs)
            for (PathRecord& r : a.paths) res.per_path.push_back(std::move(r));
    }
    return res;
}

Signal propagate_node(const Signal& f, const Filter& g) { return modulus(convolve(f, g)); }

Signal extract_feature(const Signal& f, const Filter& chi) { return convolve(f, chi); }

DecompositionReport energy_decomposition_report(const ModuleSequence& seq,
                                                const ScatteringResult& res, double tol) {
    DecompositionReport rep;
    rep.tol = tol;
    rep.pass = true;
    double e_in = res.input_energy;
    double feat_sum = 0.0, pruned_sum = 0.0;
    for (int N = 0; N <= res.depth; ++N) {
        if (N >= 1) {
            feat_sum += res.F[N - 1];
            pruned_sum += N >= 2 ? res.pruned[N - 1] : 0.0;
        }
        auto [a, b] = seq.products(N);
        DecompositionRow row;
        row.N = N;
        row.lower = a * e_in;
        row.upper = b * e_in;
        row.middle = feat_sum + res.W[N];
        row.slack = pruned_sum;
        row.pass = row.middle >= row.lower - row.slack - tol * e_in &&
                   row.middle <= row.upper + tol * e_in;
        if (!row.pass) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

DemodReport demodulation_metrics(const Signal& f, const Filter& g, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("demodulation_metrics: delta must be positive");
    const FrequencyGrid& grid = f.grid();
    if (g.spectral.size() != grid.size())
        throw std::invalid_argument("demodulation_metrics: filter size does not match grid");
    const auto& ops = kernels::active();
    std::size_t total = grid.size();
    std::vector<double> low(total);
    for (std::size_t i = 0; i < total; ++i)
        low[i] = grid.frequency_norm2(i) < delta * delta ? 1.0 : 0.0;

    std::vector<cplx> prod(total), spat(total), after(total);
    ops.cmul(f.spectral().data(), g.spectral.data(), prod.data(), total);
    DemodReport rep;
    double dw = grid.bin_measure();
    rep.band_energy = ops.sq_norm(prod.data(), total) * dw;
    if (rep.band_energy <= 0.0) return rep;
    rep.low_fraction_before = ops.weighted_sq_norm(low.data(), prod.data(), total) * dw /
                              rep.band_energy;
    fft::backward(grid, prod.data(), spat.data());
    ops.modulus(spat.data(), spat.data(), total);
    fft::forward(grid, spat.data(), after.data());
    double after_total = ops.sq_norm(after.data(), total) * dw;
    if (after_total > 0.0)
        rep.low_fraction_after =
            ops.weighted_sq_norm(low.data(), after.data(), total) * dw / after_total;
    return rep;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_result_csv(std::ostream& os, const ScatteringResult& res, const ConfigEcho& config) {
    os << "# scatnet-result v1\n";
    for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
    os << "# input_energy=" << fmt(res.input_energy) << "\n";
    os << "layer,W,F,pruned\n";
    for (int n = 0; n <= res.depth; ++n) {
        os << n << ',' << fmt(res.W[n]) << ',';
        if (n < static_cast<int>(res.F.size())) os << fmt(res.F[n]);
        os << ',' << fmt(res.pruned[n]) << '\n';
    }
}

nlohmann::json result_to_json(const ScatteringResult& res, const ConfigEcho& config) {
    nlohmann::json j;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    j["depth"] = res.depth;
    j["input_energy"] = res.input_energy;
    j["W"] = res.W;
    j["F"] = res.F;
    j["pruned"] = res.pruned;
    j["per_path_complete"] = res.per_path_complete;
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& r : res.per_path) {
        nlohmann::json p;
        p["path"] = r.path.str();
        p["map_energy"] = r.map_energy;
        if (r.has_feature) p["feature_energy"] = r.feature_energy;
        p["pruned"] = r.pruned;
        paths.push_back(std::move(p));
    }
    j["per_path"] = std::move(paths);
    return j;
}

}  // namespace scatnet
