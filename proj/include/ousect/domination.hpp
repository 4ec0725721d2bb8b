// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "ousect/grid.hpp"
#include "ousect/params.hpp"

namespace ousect {

// Quadratic-form margin Re(1/s_z) - m_p^2 / Re(s_z)
//                     = (cos^2(arg s_z) - m_p^2) / Re(s_z).
// Positive exactly on E (given Re s_z > 0); the coefficient that makes the
// dominating Gaussian integrable.  Throws "degenerate-input" when
// Re s_z = 0 and propagates the pole-proximity error of s_map.
double margin(complexd z, const CalculusParams& params);

// Dominating kernel g_z(x) = (2*pi)^{-d/2} |1-e^{-2z}|^{-d/2}
//                            exp(-(1/8) margin(z) |x|^2).
double g_value(complexd z, std::span<const double> x,
               const CalculusParams& params);

// Closed-form integral of g_z over R^d:
// 2^{-d/2} |1-e^{-2z}|^{-d/2} ((1/8) margin(z))^{-d/2}.
// margin(z) <= 0 means g_z is not integrable: "divergent-integral" error.
double g_l1_closed_form(complexd z, const CalculusParams& params);

// Trapezoid cross-check of the closed form on a grid scaled to g_z's own
// decay length (so accuracy is uniform down to tiny margins).
double g_l1_quadrature(complexd z, const CalculusParams& params);

struct DominationReport {
    complexd z;
    CalculusParams params;
    GridSpec grid;
    double min_margin = 0.0;  // min over pairs of g_z(x-y) - |k_z(x,y)|
    std::vector<double> argmin_x, argmin_y;
    std::size_t samples = 0;  // node_count^2
};

// Scans g_z(x - y) - |conjugated kernel(z, x, y)| over all grid pairs.
// The pointwise bound is certified when min_margin >= -1e-12 (slack for
// rounding in exp/abs only; the inequality itself is exact).  Requires
// z in E, else a "domain" error: the bound is not claimed outside E.
DominationReport check_domination(complexd z, const CalculusParams& params,
                                  const GridSpec& spec);

// Deterministic low-discrepancy samples of the constrained region, drawn
// from the rectangle Re z in (1e-3, re_max], Im z in [-pi+delta, pi-delta]
// (one period; the region is 2*pi*i periodic).  Throws a "sampling" error
// when the region yields no points.
std::vector<complexd> sample_constrained_region(const CalculusParams& params,
                                                const DomainSpec& spec,
                                                std::size_t count,
                                                double re_max = 8.0);

// Deterministic samples of E itself from the same rectangle shape.
std::vector<complexd> sample_E(const CalculusParams& params,
                               std::size_t count, double re_min = 0.05,
                               double re_max = 6.0);

struct SupBoundSample {
    complexd z;
    double g_l1 = 0.0;
    double chain_rhs = 0.0;      // epsilon^{-d/2} 2^d |1+e^{-z}|^{-d}
    double one_plus_w_abs = 0.0; // |1 + e^{-z}|
};

struct SupBoundReport {
    CalculusParams params;
    DomainSpec spec;
    std::size_t samples = 0;
    bool chain_holds = true;     // g_l1 <= chain_rhs at every sample
    double sup_g_l1 = 0.0;
    double sup_chain_rhs = 0.0;
    double min_one_plus_w = 0.0; // bounded away from 0 by delta
    double worst_slack = 0.0;    // min of chain_rhs - g_l1
    SupBoundSample worst;
};

// Verifies the closing chain ||g_z||_1 <= epsilon^{-d/2} 2^d |1+e^{-z}|^{-d}
// at sampled z in the constrained region and reports the sup of both sides
// plus min |1+e^{-z}| over the samples.
SupBoundReport sup_integral_bound(const CalculusParams& params,
                                  const DomainSpec& spec,
                                  std::size_t sample_count);

// Bisects arg s (at fixed |s| = s_modulus) for the sign change of the
// margin; the change sits at pi/2 - theta_p, so the return value equals
// the critical angle up to tol.  Requires p != 2 (at p = 2 the critical
// angle is pi/2, outside the reachable range).
double margin_sign_change_angle(const CalculusParams& params,
                                double s_modulus, double tol);

// Inverse of the s reparametrization: z = log((1+s)/(1-s)), principal log.
complexd z_from_s(complexd s);

}  // namespace ousect
