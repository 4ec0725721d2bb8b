// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "ousect/errors.hpp"

namespace ousect {

using complexd = std::complex<double>;

// Exponent-derived constants. m_p = |1 - 2/p| and theta_p = arcsin(m_p);
// dual exponents p and p/(p-1) produce the same pair. The admissible
// arguments for s_z form the open sector of half-angle pi/2 - theta_p.
struct CalculusParams {
    double p = 2.0;
    int d = 1;
    double m_p = 0.0;
    double theta_p = 0.0;

    double holder_conjugate() const { return p / (p - 1.0); }
    double critical_arg() const { return 0.5 * std::numbers::pi - theta_p; }
    // Coefficient of phi(x) - phi(y) in the measure-conjugated kernel.
    double weight_coeff() const { return 0.5 - 1.0 / p; }
};

inline CalculusParams compute_params(double p, int d) {
    if (!std::isfinite(p) || !(p > 1.0))
        fail("invalid-exponent", "exponent p must be finite and > 1");
    if (d < 1 || d > 3)
        fail("invalid-argument", "dimension d must be 1, 2, or 3");
    CalculusParams out;
    out.p = p;
    out.d = d;
    out.m_p = std::abs(1.0 - 2.0 / p);
    out.theta_p = std::asin(out.m_p);
    return out;
}

// Quantitative margins selecting the compact-in-angle subfamily:
// epsilon tightens the cos^2(arg s_z) bound above m_p^2, delta keeps z
// away from the kernel's poles on i*pi*(2Z+1).
struct DomainSpec {
    double epsilon = 0.05;
    double delta = 0.3;
};

inline void validate_domain_spec(const DomainSpec& spec,
                                 const CalculusParams& params) {
    if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon))
        fail("invalid-argument", "epsilon must be positive");
    if (!(spec.delta > 0.0) || !std::isfinite(spec.delta))
        fail("invalid-argument", "delta must be positive");
    if (params.m_p * params.m_p + spec.epsilon > 1.0)
        fail("invalid-argument",
             "m_p^2 + epsilon exceeds 1, the constrained region is empty");
}

}  // namespace ousect
