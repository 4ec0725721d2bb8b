// SPDX-License-Identifier: Apache-2.0
// AVX2+FMA row kernels.  This translation unit is compiled with
// -mavx2 -mfma and must only be entered after avx2_supported() passed.
#include "ousect/simd/backend.hpp"

#if defined(OUSECT_X86)

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

namespace ousect::simd {
namespace {

// exp on 4 lanes.  Cody-Waite reduction x = n*ln2 + r, rational
// approximation e^r = 1 + 2*r*P(r^2) / (Q(r^2) - r*P(r^2)), then exact
// scaling by 2^n split into two factors so extreme n stay representable.
// Inputs above 709.78 return +inf; inputs below -708.4 flush toward 0.
inline __m256d exp4(__m256d x) {
    const __m256d hi_cut = _mm256_set1_pd(709.782712893384);
    const __m256d lo_cut = _mm256_set1_pd(-708.396418532264);
    const __m256d overflow = _mm256_cmp_pd(x, hi_cut, _CMP_GT_OQ);
    x = _mm256_min_pd(x, hi_cut);
    x = _mm256_max_pd(x, lo_cut);

    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);
    __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910e-1));
    __m256d px = _mm256_mul_pd(r, p);
    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.0));
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(q, px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // 2^n with n split as n1 + n2; each factor's exponent stays in range.
    __m128i n32 = _mm256_cvtpd_epi32(n);
    __m128i n1 = _mm_srai_epi32(n32, 1);
    __m128i n2 = _mm_sub_epi32(n32, n1);
    const __m256i bias = _mm256_set1_epi64x(1023);
    __m256d f1 = _mm256_castsi256_pd(_mm256_slli_epi64(
        _mm256_add_epi64(_mm256_cvtepi32_epi64(n1), bias), 52));
    __m256d f2 = _mm256_castsi256_pd(_mm256_slli_epi64(
        _mm256_add_epi64(_mm256_cvtepi32_epi64(n2), bias), 52));
    e = _mm256_mul_pd(_mm256_mul_pd(e, f1), f2);

    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    return _mm256_blendv_pd(e, inf, overflow);
}

// sin and cos on 4 lanes.  Quadrant q = round(x * 2/pi), Cody-Waite
// reduction against pi/2 written as 2q * (pi/4 triple), minimax
// polynomials on |r| <= pi/4, quadrant fixup by swap and sign flip.
// Accurate for |x| up to ~1e6, far beyond the exponents used here.
inline void sincos4(__m256d x, __m256d* sin_out, __m256d* cos_out) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d sin_in_sign = _mm256_and_pd(x, sign_mask);
    __m256d ax = _mm256_andnot_pd(sign_mask, x);

    const __m256d two_over_pi = _mm256_set1_pd(0.63661977236758134308);
    __m256d q = _mm256_round_pd(_mm256_mul_pd(ax, two_over_pi),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d j = _mm256_add_pd(q, q);  // reduce against pi/4 pieces
    const __m256d dp1 = _mm256_set1_pd(7.85398125648498535156e-1);
    const __m256d dp2 = _mm256_set1_pd(3.77489470793079817668e-8);
    const __m256d dp3 = _mm256_set1_pd(2.69515142907905952645e-15);
    __m256d r = _mm256_fnmadd_pd(j, dp1, ax);
    r = _mm256_fnmadd_pd(j, dp2, r);
    r = _mm256_fnmadd_pd(j, dp3, r);
    __m256d rr = _mm256_mul_pd(r, r);

    __m256d sp = _mm256_set1_pd(1.58962301576546568060e-10);
    sp = _mm256_fmadd_pd(sp, rr, _mm256_set1_pd(-2.50507477628578072866e-8));
    sp = _mm256_fmadd_pd(sp, rr, _mm256_set1_pd(2.75573136213857245213e-6));
    sp = _mm256_fmadd_pd(sp, rr, _mm256_set1_pd(-1.98412698295895385996e-4));
    sp = _mm256_fmadd_pd(sp, rr, _mm256_set1_pd(8.33333333332211858878e-3));
    sp = _mm256_fmadd_pd(sp, rr, _mm256_set1_pd(-1.66666666666666307295e-1));
    __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, rr), sp, r);

    __m256d cp = _mm256_set1_pd(-1.13585365213876817300e-11);
    cp = _mm256_fmadd_pd(cp, rr, _mm256_set1_pd(2.08757008419747316778e-9));
    cp = _mm256_fmadd_pd(cp, rr, _mm256_set1_pd(-2.75573141792967388112e-7));
    cp = _mm256_fmadd_pd(cp, rr, _mm256_set1_pd(2.48015872888517179954e-5));
    cp = _mm256_fmadd_pd(cp, rr, _mm256_set1_pd(-1.38888888888730564116e-3));
    cp = _mm256_fmadd_pd(cp, rr, _mm256_set1_pd(4.16666666666665929218e-2));
    __m256d cos_r = _mm256_mul_pd(_mm256_mul_pd(rr, rr), cp);
    cos_r = _mm256_fnmadd_pd(rr, _mm256_set1_pd(0.5), _mm256_add_pd(cos_r, _mm256_set1_pd(1.0)));

    // quadrant bits: bit0 swaps sin/cos, bit1 flips sin's sign,
    // bit0 ^ bit1 flips cos's sign.
    __m128i q32 = _mm256_cvtpd_epi32(q);
    __m256i q64 = _mm256_cvtepi32_epi64(q32);
    const __m256i one = _mm256_set1_epi64x(1);
    __m256i bit0 = _mm256_and_si256(q64, one);
    __m256i bit1 = _mm256_and_si256(_mm256_srli_epi64(q64, 1), one);
    __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit0, one));
    __m256d flip_sin = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, one));
    __m256d flip_cos = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_xor_si256(bit0, bit1), one));

    __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
    __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(flip_sin, sign_mask));
    c = _mm256_xor_pd(c, _mm256_and_pd(flip_cos, sign_mask));
    s = _mm256_xor_pd(s, sin_in_sign);
    *sin_out = s;
    *cos_out = c;
}

inline __m256d quad4(__m256d c0, __m256d c1, __m256d c2, __m256d x) {
    return _mm256_fmadd_pd(_mm256_fmadd_pd(c2, x, c1), x, c0);
}

void real_row(double scale, double a0, double a1, double a2, const double* t,
              std::size_t n, double* out) {
    const __m256d v0 = _mm256_set1_pd(a0);
    const __m256d v1 = _mm256_set1_pd(a1);
    const __m256d v2 = _mm256_set1_pd(a2);
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d x = _mm256_loadu_pd(t + j);
        _mm256_storeu_pd(out + j,
                         _mm256_mul_pd(vs, exp4(quad4(v0, v1, v2, x))));
    }
    for (; j < n; ++j) {
        double x = t[j];
        out[j] = scale * std::exp(a0 + x * (a1 + x * a2));
    }
}

void cplx_row(complexd pref, complexd q0, complexd q1, complexd q2,
              const double* t, std::size_t n, complexd* out) {
    const __m256d r0 = _mm256_set1_pd(q0.real());
    const __m256d r1 = _mm256_set1_pd(q1.real());
    const __m256d r2 = _mm256_set1_pd(q2.real());
    const __m256d i0 = _mm256_set1_pd(q0.imag());
    const __m256d i1 = _mm256_set1_pd(q1.imag());
    const __m256d i2 = _mm256_set1_pd(q2.imag());
    const __m256d pr = _mm256_set1_pd(pref.real());
    const __m256d pi = _mm256_set1_pd(pref.imag());
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d x = _mm256_loadu_pd(t + j);
        __m256d mag = exp4(quad4(r0, r1, r2, x));
        __m256d si, co;
        sincos4(quad4(i0, i1, i2, x), &si, &co);
        __m256d re = _mm256_mul_pd(mag, co);
        __m256d im = _mm256_mul_pd(mag, si);
        __m256d ore = _mm256_fnmadd_pd(pi, im, _mm256_mul_pd(pr, re));
        __m256d oim = _mm256_fmadd_pd(pi, re, _mm256_mul_pd(pr, im));
        __m256d lo = _mm256_unpacklo_pd(ore, oim);
        __m256d hi = _mm256_unpackhi_pd(ore, oim);
        double* dst = reinterpret_cast<double*>(out + j);
        _mm256_storeu_pd(dst, _mm256_permute2f128_pd(lo, hi, 0x20));
        _mm256_storeu_pd(dst + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    }
    for (; j < n; ++j) {
        double x = t[j];
        double er = q0.real() + x * (q1.real() + x * q2.real());
        double ei = q0.imag() + x * (q1.imag() + x * q2.imag());
        double m = std::exp(er);
        out[j] = pref * complexd(m * std::cos(ei), m * std::sin(ei));
    }
}

void dom_row(double scale, const double* g, const double* k, const double* t,
             std::size_t n, double* min_out, std::size_t* argmin_out) {
    const __m256d g0 = _mm256_set1_pd(g[0]);
    const __m256d g1 = _mm256_set1_pd(g[1]);
    const __m256d g2 = _mm256_set1_pd(g[2]);
    const __m256d k0 = _mm256_set1_pd(k[0]);
    const __m256d k1 = _mm256_set1_pd(k[1]);
    const __m256d k2 = _mm256_set1_pd(k[2]);
    const __m256d vs = _mm256_set1_pd(scale);
    __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vidx = _mm256_setzero_pd();
    __m256d cur = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d step = _mm256_set1_pd(4.0);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d x = _mm256_loadu_pd(t + j);
        __m256d v = _mm256_mul_pd(
            vs, _mm256_sub_pd(exp4(quad4(g0, g1, g2, x)),
                              exp4(quad4(k0, k1, k2, x))));
        __m256d lt = _mm256_cmp_pd(v, vmin, _CMP_LT_OQ);
        vmin = _mm256_blendv_pd(vmin, v, lt);
        vidx = _mm256_blendv_pd(vidx, cur, lt);
        cur = _mm256_add_pd(cur, step);
    }
    double vals[4], idxs[4];
    _mm256_storeu_pd(vals, vmin);
    _mm256_storeu_pd(idxs, vidx);
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (int lane = 0; lane < 4; ++lane) {
        std::size_t li = std::size_t(idxs[lane]);
        if (vals[lane] < best || (vals[lane] == best && li < arg)) {
            best = vals[lane];
            arg = li;
        }
    }
    for (; j < n; ++j) {
        double x = t[j];
        double vg = std::exp(g[0] + x * (g[1] + x * g[2]));
        double vk = std::exp(k[0] + x * (k[1] + x * k[2]));
        double v = scale * (vg - vk);
        if (v < best) {
            best = v;
            arg = j;
        }
    }
    *min_out = best;
    *argmin_out = arg;
}

const Backend kAvx2{"avx2", &real_row, &cplx_row, &dom_row};

}  // namespace

const Backend& avx2_backend() { return kAvx2; }

}  // namespace ousect::simd

#endif  // OUSECT_X86
