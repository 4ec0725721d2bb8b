// SPDX-License-Identifier: Apache-2.0
#include "ousect/simd/backend.hpp"

#include <atomic>
#include <cmath>
#include <limits>

namespace ousect::simd {
namespace {

// Horner order matches the vector paths so results differ only by
// rounding inside exp/cos/sin.

void real_row(double scale, double a0, double a1, double a2, const double* t,
              std::size_t n, double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        double x = t[j];
        out[j] = scale * std::exp(a0 + x * (a1 + x * a2));
    }
}

void cplx_row(complexd pref, complexd q0, complexd q1, complexd q2,
              const double* t, std::size_t n, complexd* out) {
    for (std::size_t j = 0; j < n; ++j) {
        double x = t[j];
        double er = q0.real() + x * (q1.real() + x * q2.real());
        double ei = q0.imag() + x * (q1.imag() + x * q2.imag());
        double m = std::exp(er);
        out[j] = pref * complexd(m * std::cos(ei), m * std::sin(ei));
    }
}

void dom_row(double scale, const double* g, const double* k, const double* t,
             std::size_t n, double* min_out, std::size_t* argmin_out) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
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

const Backend kScalar{"scalar", &real_row, &cplx_row, &dom_row};

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
#if defined(OUSECT_X86)
    if (avx2_supported()) return &avx2_backend();
#endif
    return &kScalar;
}

}  // namespace

const Backend& scalar_backend() { return kScalar; }

#if defined(OUSECT_X86)
bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Backend& active_backend() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (b == nullptr) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

bool set_backend(const std::string& name) {
    if (name == "auto") {
        g_active.store(pick_default(), std::memory_order_release);
        return true;
    }
    if (name == "scalar") {
        g_active.store(&kScalar, std::memory_order_release);
        return true;
    }
#if defined(OUSECT_X86)
    if (name == "avx2" && avx2_supported()) {
        g_active.store(&avx2_backend(), std::memory_order_release);
        return true;
    }
#endif
    return false;
}

std::vector<std::string> available_backends() {
    std::vector<std::string> names{"scalar"};
#if defined(OUSECT_X86)
    if (avx2_supported()) names.emplace_back("avx2");
#endif
    return names;
}

}  // namespace ousect::simd
