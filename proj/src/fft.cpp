#include "scatnet/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace scatnet::fft {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int dim, int n, int sign) {
    // Plans carry FFTW_UNALIGNED so they apply to any caller buffers.
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(dim, n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t total = dim == 1 ? static_cast<std::size_t>(n)
                                 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<fftw_complex> in(total), out(total);
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(n, in.data(), out.data(), sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_2d(n, n, in.data(), out.data(), sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

void execute(const FrequencyGrid& grid, const cplx* in, cplx* out, int sign, double scale) {
    fftw_plan p = get_plan(grid.dim(), grid.samples_per_axis(), sign);
    fftw_execute_dft(p, const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    std::size_t total = grid.size();
    double* po = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < 2 * total; ++i) po[i] *= scale;
}

}  // namespace

void forward(const FrequencyGrid& grid, const cplx* spatial, cplx* spectral) {
    execute(grid, spatial, spectral, FFTW_FORWARD, grid.spatial_measure());
}

void backward(const FrequencyGrid& grid, const cplx* spectral, cplx* spatial) {
    execute(grid, spectral, spatial, FFTW_BACKWARD, grid.bin_measure());
}

}  // namespace scatnet::fft
