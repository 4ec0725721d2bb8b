// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "ousect/grid.hpp"
#include "ousect/params.hpp"

namespace ousect {

// One kernel evaluation request: complex time z, source x, target y.
struct KernelPoint {
    complexd z;
    std::span<const double> x;
    std::span<const double> y;
    CalculusParams params;
};

// Per-z constants shared by every kernel form.  Valid only for Re z > 0,
// where |e^{-2z}| < 1 makes Re(1 - e^{-2z}) > 0 and the principal branch
// of (2*pi*(1 - e^{-2z}))^{-d/2} is continuous.
struct KernelConsts {
    complexd z;
    complexd w;             // e^{-z}
    complexd v;             // 1 - e^{-2z}
    complexd s;             // (1 - w)/(1 + w)
    complexd prefactor;     // (2*pi*v)^{-d/2}, principal branch
    double abs_prefactor;   // |prefactor|
    double weight_coeff;    // 1/2 - 1/p
    int d = 1;
    double p = 2.0;
    double m_p = 0.0;
};

// Throws a "domain" error unless z is finite with Re z > 0.
KernelConsts make_kernel_consts(complexd z, const CalculusParams& params);

// e^u - 1 without cancellation for small u.
complexd cexpm1(complexd u);

namespace detail {

// Exponent contribution of one axis pair (xa, t) as a quadratic in the
// target coordinate t; q2 is xa-independent.
struct AxisQuad {
    complexd q0, q1, q2;
};

// -(w*xa - t)^2 / (2v)
AxisQuad mehler_axis_quad(const KernelConsts& c, double xa);
// -s*(xa+t)^2/8 - (xa-t)^2/(8s) + weight_coeff*(xa^2 - t^2)/2
AxisQuad conjugated_axis_quad(const KernelConsts& c, double xa);

inline complexd axis_quad_value(const AxisQuad& q, double t) {
    return q.q0 + t * q.q1 + (t * t) * q.q2;
}

}  // namespace detail

// Defining form: (2*pi)^{-d/2} (1-e^{-2z})^{-d/2}
//                exp(-|e^{-z}x - y|^2 / (2(1-e^{-2z}))),
// the squared norm continued bilinearly (sum of squared components) so the
// expression stays holomorphic in z.  Real and strictly positive for real z.
complexd mehler(const KernelPoint& pt);

// Completed-square form: same prefactor times
// exp(-s_z*|x+y|^2/8 - |x-y|^2/(8 s_z)) * exp((phi(x)-phi(y))/2).
complexd mehler_alt(const KernelPoint& pt);

// Kernel of the conjugated operator: the Gaussian part of mehler_alt with
// the weight exp((1/2 - 1/p)(phi(x) - phi(y))); equals
// e^{-phi(x)/p} * mehler * e^{+phi(y)/p}.
complexd conjugated_kernel(const KernelPoint& pt);

// The weight map f -> f * e^{-phi/p} and its inverse.  A constant multiple
// of an isometry: discrete norms satisfy
// ||u_p_apply(f)||_{L^p(lambda)} = (2*pi)^{d/(2p)} ||f||_{L^p(mu)}
// up to quadrature error.
GridFunction u_p_apply(const GridFunction& f, const CalculusParams& params);
GridFunction u_p_invert(const GridFunction& f, const CalculusParams& params);

// T_z f by trapezoid quadrature on f's own grid.  Measure::Mu integrates
// the defining kernel against f dy; Measure::Lambda uses the conjugated
// kernel.  Refuses Re z < 1e-3 (kernel too close to a delta for the grid)
// with a "resolution" error; Re z <= 0 is a "domain" error.
GridFunction apply_semigroup_quadrature(complexd z, const GridFunction& f,
                                        Measure measure,
                                        const CalculusParams& params);

// <T_z f, g> in L^2(mu), the pairing whose analyticity the residual checks.
complexd semigroup_pairing(complexd z, const GridFunction& f,
                           const GridFunction& g,
                           const CalculusParams& params);

// Cauchy-Riemann defect (d/dRe + i d/dIm) <T_z f, g> by central
// differences of half-width step; O(step^2) small iff the pairing is
// analytic near z.  Requires Re z - step > 0.
complexd analyticity_residual(complexd z, const GridFunction& f,
                              const GridFunction& g, double step,
                              const CalculusParams& params);

}  // namespace ousect
