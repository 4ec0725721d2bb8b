// SPDX-License-Identifier: Apache-2.0
#include "ousect/kernel.hpp"

#include <cmath>
#include <vector>

#include "ousect/errors.hpp"
#include "ousect/parallel.hpp"
#include "ousect/simd/backend.hpp"

namespace ousect {

complexd cexpm1(complexd u) {
    double a = u.real();
    double b = u.imag();
    double em = std::expm1(a);
    double sb = std::sin(b);
    double shb = std::sin(0.5 * b);
    // e^a cos b - 1 = expm1(a) cos b - 2 sin^2(b/2)
    double re = em * std::cos(b) - 2.0 * shb * shb;
    double im = (em + 1.0) * sb;
    return {re, im};
}

KernelConsts make_kernel_consts(complexd z, const CalculusParams& params) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail("domain", "complex time must be finite");
    if (!(z.real() > 0.0))
        fail("domain", "kernel evaluation requires Re z > 0");
    KernelConsts c;
    c.z = z;
    c.w = std::exp(-z);
    c.v = -cexpm1(-2.0 * z);
    c.s = std::tanh(0.5 * z);
    c.prefactor = std::pow(2.0 * M_PI * c.v, -0.5 * params.d);
    c.abs_prefactor = std::pow(2.0 * M_PI * std::abs(c.v), -0.5 * params.d);
    c.weight_coeff = params.weight_coeff();
    c.d = params.d;
    c.p = params.p;
    c.m_p = params.m_p;
    return c;
}

namespace detail {

AxisQuad mehler_axis_quad(const KernelConsts& c, double xa) {
    complexd inv2v = 0.5 / c.v;
    complexd wx = c.w * xa;
    return AxisQuad{-(wx * wx) * inv2v, 2.0 * wx * inv2v, -inv2v};
}

AxisQuad conjugated_axis_quad(const KernelConsts& c, double xa) {
    complexd s8 = 0.125 * c.s;
    complexd inv8s = 0.125 / c.s;
    double half_c = 0.5 * c.weight_coeff;
    AxisQuad q;
    q.q2 = -s8 - inv8s - half_c;
    q.q1 = xa * (2.0 * inv8s - 2.0 * s8);
    q.q0 = (xa * xa) * (-s8 - inv8s + half_c);
    return q;
}

}  // namespace detail

namespace {

void check_point(const KernelPoint& pt) {
    const std::size_t d = std::size_t(pt.params.d);
    if (pt.x.size() != d || pt.y.size() != d)
        fail("invalid-argument", "kernel point dimension mismatch");
    for (std::size_t a = 0; a < d; ++a)
        if (!std::isfinite(pt.x[a]) || !std::isfinite(pt.y[a]))
            fail("invalid-argument", "kernel point coordinates must be finite");
}

}  // namespace

complexd mehler(const KernelPoint& pt) {
    KernelConsts c = make_kernel_consts(pt.z, pt.params);
    check_point(pt);
    complexd q{};
    for (int a = 0; a < c.d; ++a) {
        complexd t = c.w * pt.x[std::size_t(a)] - pt.y[std::size_t(a)];
        q += t * t;
    }
    return c.prefactor * std::exp(-q / (2.0 * c.v));
}

complexd mehler_alt(const KernelPoint& pt) {
    KernelConsts c = make_kernel_consts(pt.z, pt.params);
    check_point(pt);
    double u2 = 0.0, k2 = 0.0, dphi = 0.0;
    for (int a = 0; a < c.d; ++a) {
        double sum = pt.x[std::size_t(a)] + pt.y[std::size_t(a)];
        double dif = pt.x[std::size_t(a)] - pt.y[std::size_t(a)];
        u2 += sum * sum;
        k2 += dif * dif;
        dphi += 0.5 * sum * dif;  // (x^2 - y^2)/2 per axis
    }
    complexd expo = -c.s * (0.125 * u2) - (0.125 * k2) / c.s + 0.5 * dphi;
    return c.prefactor * std::exp(expo);
}

complexd conjugated_kernel(const KernelPoint& pt) {
    KernelConsts c = make_kernel_consts(pt.z, pt.params);
    check_point(pt);
    double u2 = 0.0, k2 = 0.0, dphi = 0.0;
    for (int a = 0; a < c.d; ++a) {
        double sum = pt.x[std::size_t(a)] + pt.y[std::size_t(a)];
        double dif = pt.x[std::size_t(a)] - pt.y[std::size_t(a)];
        u2 += sum * sum;
        k2 += dif * dif;
        dphi += 0.5 * sum * dif;
    }
    complexd expo =
        -c.s * (0.125 * u2) - (0.125 * k2) / c.s + c.weight_coeff * dphi;
    return c.prefactor * std::exp(expo);
}

namespace {

GridFunction scale_by_weight(const GridFunction& f, double coeff) {
    GridFunction out(f.spec);
    const std::size_t n = f.values.size();
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = f.spec.node(i);
            double ph = phi(std::span<const double>(
                x.data(), std::size_t(f.spec.dim)));
            out.values[i] = f.values[i] * std::exp(coeff * ph);
        }
    });
    return out;
}

}  // namespace

GridFunction u_p_apply(const GridFunction& f, const CalculusParams& params) {
    return scale_by_weight(f, -1.0 / params.p);
}

GridFunction u_p_invert(const GridFunction& f, const CalculusParams& params) {
    return scale_by_weight(f, 1.0 / params.p);
}

GridFunction apply_semigroup_quadrature(complexd z, const GridFunction& f,
                                        Measure measure,
                                        const CalculusParams& params) {
    if (f.spec.dim != params.d)
        fail("invalid-argument", "grid dimension does not match params");
    if (std::isfinite(z.real()) && z.real() > 0.0 && z.real() < 1e-3)
        fail("resolution",
             "Re z below 1e-3: kernel too close to a delta for this grid");
    KernelConsts c = make_kernel_consts(z, params);

    const GridSpec& spec = f.spec;
    const int n = spec.axis_nodes();
    const int d = spec.dim;
    std::vector<double> coords(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coords[std::size_t(i)] = spec.coord(i);

    std::vector<complexd> wf(f.values.size());
    for (std::size_t j = 0; j < wf.size(); ++j)
        wf[j] = f.values[j] * spec.lebesgue_weight(j);

    std::size_t prefix_count = 1;
    for (int a = 0; a < d - 1; ++a) prefix_count *= std::size_t(n);

    const auto& backend = simd::active_backend();
    const bool mu = measure == Measure::Mu;
    GridFunction out(spec);

    parallel_for(spec.node_count(), [&](std::size_t lo, std::size_t hi) {
        std::vector<complexd> row(static_cast<std::size_t>(n));
        std::vector<detail::AxisQuad> aq(static_cast<std::size_t>(d));
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = spec.node(i);
            for (int a = 0; a < d; ++a)
                aq[std::size_t(a)] =
                    mu ? detail::mehler_axis_quad(c, x[std::size_t(a)])
                       : detail::conjugated_axis_quad(c, x[std::size_t(a)]);
            complexd acc{};
            for (std::size_t pre = 0; pre < prefix_count; ++pre) {
                complexd q0 = aq[std::size_t(d - 1)].q0;
                std::size_t rest = pre;
                for (int a = d - 2; a >= 0; --a) {
                    double ya = coords.at(rest % std::size_t(n));
                    rest /= std::size_t(n);
                    q0 += detail::axis_quad_value(aq[std::size_t(a)], ya);
                }
                backend.cplx_quad_exp_row(c.prefactor, q0,
                                          aq[std::size_t(d - 1)].q1,
                                          aq[std::size_t(d - 1)].q2,
                                          coords.data(), std::size_t(n),
                                          row.data());
                const complexd* wrow = wf.data() + pre * std::size_t(n);
                for (int j = 0; j < n; ++j)
                    acc += row[std::size_t(j)] * wrow[j];
            }
            out.values[i] = acc;
        }
    });
    return out;
}

complexd semigroup_pairing(complexd z, const GridFunction& f,
                           const GridFunction& g,
                           const CalculusParams& params) {
    if (!(f.spec == g.spec))
        fail("invalid-argument", "pairing requires matching grids");
    GridFunction tf = apply_semigroup_quadrature(z, f, Measure::Mu, params);
    complexd acc{};
    for (std::size_t i = 0; i < tf.values.size(); ++i)
        acc += f.spec.mu_weight(i) * tf.values[i] * std::conj(g.values[i]);
    return acc;
}

complexd analyticity_residual(complexd z, const GridFunction& f,
                              const GridFunction& g, double step,
                              const CalculusParams& params) {
    if (!(step > 0.0) || !std::isfinite(step))
        fail("invalid-argument", "finite-difference step must be positive");
    if (!(z.real() - step > 0.0))
        fail("domain", "z - step leaves the right half-plane");
    complexd fr = (semigroup_pairing(z + step, f, g, params) -
                   semigroup_pairing(z - step, f, g, params)) /
                  (2.0 * step);
    complexd fi = (semigroup_pairing(z + complexd(0.0, step), f, g, params) -
                   semigroup_pairing(z - complexd(0.0, step), f, g, params)) /
                  (2.0 * step);
    return fr + complexd(0.0, 1.0) * fi;
}

}  // namespace ousect
