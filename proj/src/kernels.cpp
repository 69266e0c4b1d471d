#include "scatnet/kernels.hpp"

#include <cmath>

#if defined(SCATNET_X86)
#include <immintrin.h>
#endif

namespace scatnet::kernels {

namespace scalar {

static void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i) {
        double ar = pa[2 * i], ai = pa[2 * i + 1];
        double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] = ar * br - ai * bi;
        po[2 * i + 1] = ar * bi + ai * br;
    }
}

static void modulus(const cplx* z, cplx* out, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    double* po = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i) {
        double re = pz[2 * i], im = pz[2 * i + 1];
        po[2 * i] = std::sqrt(re * re + im * im);
        po[2 * i + 1] = 0.0;
    }
}

static double sq_norm(const cplx* z, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += pz[2 * i] * pz[2 * i] + pz[2 * i + 1] * pz[2 * i + 1];
    return acc;
}

static double weighted_sq_norm(const double* w, const cplx* z, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * (pz[2 * i] * pz[2 * i] + pz[2 * i + 1] * pz[2 * i + 1]);
    return acc;
}

static void add_abs2(const cplx* z, double* acc, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    for (std::size_t i = 0; i < n; ++i)
        acc[i] += pz[2 * i] * pz[2 * i] + pz[2 * i + 1] * pz[2 * i + 1];
}

static void mul_real(const cplx* z, const double* w, cplx* out, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    double* po = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i) {
        po[2 * i] = pz[2 * i] * w[i];
        po[2 * i + 1] = pz[2 * i + 1] * w[i];
    }
}

}  // namespace scalar

const Ops& scalar_ops() {
    static const Ops ops = {scalar::cmul,     scalar::modulus,  scalar::sq_norm,
                            scalar::weighted_sq_norm, scalar::add_abs2, scalar::mul_real,
                            "scalar"};
    return ops;
}

#if defined(SCATNET_X86)

namespace avx2 {

// Two complex values per 256-bit lane, interleaved [r0 i0 r1 i1].
// No FMA: keeps the pointwise kernels bitwise equal to the scalar set.

__attribute__((target("avx2"))) static void cmul(const cplx* a, const cplx* b, cplx* out,
                                                 std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d breal = _mm256_movedup_pd(vb);               // [br0 br0 br1 br1]
        __m256d bimag = _mm256_permute_pd(vb, 0xF);          // [bi0 bi0 bi1 bi1]
        __m256d t1 = _mm256_mul_pd(va, breal);               // [ar*br ai*br ...]
        __m256d aswap = _mm256_permute_pd(va, 0x5);          // [ai0 ar0 ai1 ar1]
        __m256d t2 = _mm256_mul_pd(aswap, bimag);            // [ai*bi ar*bi ...]
        _mm256_storeu_pd(po + 2 * i, _mm256_addsub_pd(t1, t2));
    }
    for (; i < n; ++i) {
        double ar = pa[2 * i], ai = pa[2 * i + 1];
        double br = pb[2 * i], bi = pb[2 * i + 1];
        po[2 * i] = ar * br - ai * bi;
        po[2 * i + 1] = ar * bi + ai * br;
    }
}

__attribute__((target("avx2"))) static void modulus(const cplx* z, cplx* out, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    const __m256d zero = _mm256_setzero_pd();
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        __m256d sq = _mm256_mul_pd(v, v);                    // [r0^2 i0^2 r1^2 i1^2]
        __m256d sw = _mm256_permute_pd(sq, 0x5);             // [i0^2 r0^2 i1^2 r1^2]
        __m256d mag = _mm256_sqrt_pd(_mm256_add_pd(sq, sw)); // [|z0| |z0| |z1| |z1|]
        _mm256_storeu_pd(po + 2 * i, _mm256_unpacklo_pd(mag, zero));
    }
    for (; i < n; ++i) {
        double re = pz[2 * i], im = pz[2 * i + 1];
        po[2 * i] = std::sqrt(re * re + im * im);
        po[2 * i + 1] = 0.0;
    }
}

__attribute__((target("avx2"))) static double sq_norm(const cplx* z, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i)
        total += pz[2 * i] * pz[2 * i] + pz[2 * i + 1] * pz[2 * i + 1];
    return total;
}

__attribute__((target("avx2"))) static double weighted_sq_norm(const double* w, const cplx* z,
                                                               std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        __m128d w2 = _mm_loadu_pd(w + i);                    // [w0 w1]
        __m256d wd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);  // [w0 w0 w1 w1]
        acc = _mm256_add_pd(acc, _mm256_mul_pd(wd, _mm256_mul_pd(v, v)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i)
        total += w[i] * (pz[2 * i] * pz[2 * i] + pz[2 * i + 1] * pz[2 * i + 1]);
    return total;
}

__attribute__((target("avx2"))) static void add_abs2(const cplx* z, double* acc, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v0 = _mm256_loadu_pd(pz + 2 * i);            // z[i], z[i+1]
        __m256d v1 = _mm256_loadu_pd(pz + 2 * i + 4);        // z[i+2], z[i+3]
        __m256d s0 = _mm256_mul_pd(v0, v0);
        __m256d s1 = _mm256_mul_pd(v1, v1);
        __m256d h = _mm256_hadd_pd(s0, s1);                  // [|z0|^2 |z2|^2 |z1|^2 |z3|^2]
        __m256d sums = _mm256_permute4x64_pd(h, 0xD8);       // [|z0|^2 |z1|^2 |z2|^2 |z3|^2]
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), sums));
    }
    for (; i < n; ++i)
        acc[i] += pz[2 * i] * pz[2 * i] + pz[2 * i + 1] * pz[2 * i + 1];
}

__attribute__((target("avx2"))) static void mul_real(const cplx* z, const double* w, cplx* out,
                                                     std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        __m128d w2 = _mm_loadu_pd(w + i);
        __m256d wd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);
        _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(v, wd));
    }
    for (; i < n; ++i) {
        po[2 * i] = pz[2 * i] * w[i];
        po[2 * i + 1] = pz[2 * i + 1] * w[i];
    }
}

}  // namespace avx2

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

const Ops& avx2_ops() {
    static const Ops ops = {avx2::cmul,     avx2::modulus,  avx2::sq_norm,
                            avx2::weighted_sq_norm, avx2::add_abs2, avx2::mul_real,
                            "avx2"};
    return ops;
}

const Ops& active() {
    static const Ops& chosen = cpu_has_avx2() ? avx2_ops() : scalar_ops();
    return chosen;
}

#else

const Ops& active() { return scalar_ops(); }

#endif

}  // namespace scatnet::kernels
