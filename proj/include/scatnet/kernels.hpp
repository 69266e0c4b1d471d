#pragma once

#include <complex>
#include <cstddef>

// Pointwise kernels on interleaved complex arrays.  Scalar versions are the
// reference; on x86 an AVX2 set is selected once at startup when the CPU
// supports it.  Pointwise kernels (cmul, modulus, mul_real) are bitwise
// identical between the two sets; reductions differ only in summation order.

namespace scatnet::kernels {

using cplx = std::complex<double>;

struct Ops {
    // out[i] = a[i] * b[i]
    void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // out[i] = |z[i]| + 0i
    void (*modulus)(const cplx* z, cplx* out, std::size_t n);
    // sum_i |z[i]|^2
    double (*sq_norm)(const cplx* z, std::size_t n);
    // sum_i w[i] * |z[i]|^2
    double (*weighted_sq_norm)(const double* w, const cplx* z, std::size_t n);
    // acc[i] += |z[i]|^2
    void (*add_abs2)(const cplx* z, double* acc, std::size_t n);
    // out[i] = z[i] * w[i]
    void (*mul_real)(const cplx* z, const double* w, cplx* out, std::size_t n);
    const char* name;
};

const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define SCATNET_X86 1
bool cpu_has_avx2();
const Ops& avx2_ops();
#endif

// Resolved once; every call in a process sees the same set.
const Ops& active();

}  // namespace scatnet::kernels
