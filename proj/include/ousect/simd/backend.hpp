// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ousect::simd {

using complexd = std::complex<double>;

// Row primitives the bulk paths reduce to: evaluating pref * exp(q(t))
// along one contiguous axis of grid coordinates, q quadratic.  All inputs
// must be finite; coefficients are per-row constants.
struct Backend {
    const char* name;

    // out[j] = scale * exp(a0 + a1*t[j] + a2*t[j]^2)
    void (*real_quad_exp_row)(double scale, double a0, double a1, double a2,
                              const double* t, std::size_t n, double* out);

    // out[j] = pref * exp(q0 + q1*t[j] + q2*t[j]^2), complex coefficients.
    void (*cplx_quad_exp_row)(complexd pref, complexd q0, complexd q1,
                              complexd q2, const double* t, std::size_t n,
                              complexd* out);

    // min over j of scale * (exp(g[0]+g[1]t+g[2]t^2) - exp(k[0]+k[1]t+k[2]t^2))
    // with its argmin; scale > 0.  Ties resolve to the smallest index so the
    // result does not depend on lane layout.
    void (*domination_row_min)(double scale, const double* g, const double* k,
                               const double* t, std::size_t n,
                               double* min_out, std::size_t* argmin_out);
};

const Backend& scalar_backend();

#if defined(OUSECT_X86)
bool avx2_supported();
const Backend& avx2_backend();  // call only when avx2_supported()
#endif

// Backend used by the library's bulk paths.  Defaults to the widest
// runtime-supported implementation; set_backend("scalar" | "avx2" | "auto")
// overrides it, returning false if the request is unavailable here.
const Backend& active_backend();
bool set_backend(const std::string& name);
std::vector<std::string> available_backends();

}  // namespace ousect::simd
