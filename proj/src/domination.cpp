// SPDX-License-Identifier: Apache-2.0
#include "ousect/domination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "ousect/errors.hpp"
#include "ousect/halton.hpp"
#include "ousect/kernel.hpp"
#include "ousect/parallel.hpp"
#include "ousect/sector.hpp"
#include "ousect/simd/backend.hpp"

namespace ousect {

double margin(complexd z, const CalculusParams& params) {
    complexd s = s_map(z);
    if (s.real() == 0.0)
        fail("degenerate-input", "Re s_z = 0 leaves the margin undefined");
    return s.real() / std::norm(s) - params.m_p * params.m_p / s.real();
}

namespace {

double abs_g_prefactor(complexd z, int d) {
    complexd v = -cexpm1(-2.0 * z);
    return std::pow(2.0 * M_PI * std::abs(v), -0.5 * d);
}

}  // namespace

double g_value(complexd z, std::span<const double> x,
               const CalculusParams& params) {
    if (int(x.size()) != params.d)
        fail("invalid-argument", "point dimension does not match params");
    double m = margin(z, params);
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return abs_g_prefactor(z, params.d) * std::exp(-0.125 * m * r2);
}

double g_l1_closed_form(complexd z, const CalculusParams& params) {
    double m = margin(z, params);
    if (!(m > 0.0))
        fail("divergent-integral", "margin <= 0: g_z is not integrable");
    complexd v = -cexpm1(-2.0 * z);
    double d = double(params.d);
    return std::pow(2.0, -0.5 * d) * std::pow(std::abs(v), -0.5 * d) *
           std::pow(0.125 * m, -0.5 * d);
}

double g_l1_quadrature(complexd z, const CalculusParams& params) {
    double m = margin(z, params);
    if (!(m > 0.0))
        fail("divergent-integral", "margin <= 0: g_z is not integrable");
    // Decay length sigma^2 = 4/m; step sigma/3 and radius 13*sigma put
    // both the trapezoid and the truncation error far below 1e-10 relative.
    double sigma = 2.0 / std::sqrt(m);
    double h = sigma / 3.0;
    GridSpec spec = GridSpec::make(39.0 * h, h, 1);
    double axis = 0.0;
    for (int i = 0; i < spec.axis_nodes(); ++i) {
        double x = spec.coord(i);
        axis += spec.axis_weight(i) * std::exp(-0.125 * m * x * x);
    }
    // g factorizes per axis, so the tensor trapezoid sum is the d-th power.
    return abs_g_prefactor(z, params.d) * std::pow(axis, double(params.d));
}

DominationReport check_domination(complexd z, const CalculusParams& params,
                                  const GridSpec& spec) {
    if (spec.dim != params.d)
        fail("invalid-argument", "grid dimension does not match params");
    if (!in_E(z, params))
        fail("domain", "pointwise domination is only claimed on E");
    KernelConsts c = make_kernel_consts(z, params);
    const double m = margin(z, params);

    const int n = spec.axis_nodes();
    const int d = spec.dim;
    std::vector<double> coords(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coords[std::size_t(i)] = spec.coord(i);

    std::size_t prefix_count = 1;
    for (int a = 0; a < d - 1; ++a) prefix_count *= std::size_t(n);
    const std::size_t node_count = spec.node_count();

    const auto& backend = simd::active_backend();

    struct Best {
        double val = std::numeric_limits<double>::infinity();
        std::size_t pair = 0;
    };
    Best best;
    std::mutex merge_mutex;

    parallel_for(node_count, [&](std::size_t lo, std::size_t hi) {
        Best local;
        std::vector<detail::AxisQuad> kq(static_cast<std::size_t>(d));
        std::vector<double> gq0(static_cast<std::size_t>(d)), gq1(static_cast<std::size_t>(d));
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = spec.node(i);
            for (int a = 0; a < d; ++a) {
                kq[std::size_t(a)] = detail::conjugated_axis_quad(
                    c, x[std::size_t(a)]);
                // -(m/8)(xa - t)^2 as a quadratic in t
                gq0[std::size_t(a)] =
                    -0.125 * m * x[std::size_t(a)] * x[std::size_t(a)];
                gq1[std::size_t(a)] = 0.25 * m * x[std::size_t(a)];
            }
            const double gq2 = -0.125 * m;
            for (std::size_t pre = 0; pre < prefix_count; ++pre) {
                double g0 = gq0[std::size_t(d - 1)];
                double k0 = kq[std::size_t(d - 1)].q0.real();
                std::size_t rest = pre;
                for (int a = d - 2; a >= 0; --a) {
                    double ya = coords[rest % std::size_t(n)];
                    rest /= std::size_t(n);
                    g0 += gq0[std::size_t(a)] + gq1[std::size_t(a)] * ya +
                          gq2 * ya * ya;
                    k0 += detail::axis_quad_value(kq[std::size_t(a)], ya)
                              .real();
                }
                double gcoef[3] = {g0, gq1[std::size_t(d - 1)], gq2};
                double kcoef[3] = {k0, kq[std::size_t(d - 1)].q1.real(),
                                   kq[std::size_t(d - 1)].q2.real()};
                double row_min;
                std::size_t row_arg;
                backend.domination_row_min(c.abs_prefactor, gcoef, kcoef,
                                           coords.data(), std::size_t(n),
                                           &row_min, &row_arg);
                std::size_t pair =
                    i * node_count + pre * std::size_t(n) + row_arg;
                if (row_min < local.val ||
                    (row_min == local.val && pair < local.pair)) {
                    local.val = row_min;
                    local.pair = pair;
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        if (local.val < best.val ||
            (local.val == best.val && local.pair < best.pair))
            best = local;
    });

    DominationReport report;
    report.z = z;
    report.params = params;
    report.grid = spec;
    report.min_margin = best.val;
    report.samples = node_count * node_count;
    auto xa = spec.node(best.pair / node_count);
    auto ya = spec.node(best.pair % node_count);
    report.argmin_x.assign(xa.begin(), xa.begin() + d);
    report.argmin_y.assign(ya.begin(), ya.begin() + d);
    return report;
}

std::vector<complexd> sample_constrained_region(const CalculusParams& params,
                                                const DomainSpec& spec,
                                                std::size_t count,
                                                double re_max) {
    validate_domain_spec(spec, params);
    if (count == 0) fail("invalid-argument", "sample count must be positive");
    if (!(re_max > 1e-3))
        fail("invalid-argument", "re_max must exceed the 1e-3 floor");
    const double im_lo = -M_PI + spec.delta;
    const double im_hi = M_PI - spec.delta;
    std::vector<complexd> out;
    out.reserve(count);
    const std::size_t cap = std::max<std::size_t>(1000000, 4000 * count);
    for (std::size_t i = 1; i <= cap && out.size() < count; ++i) {
        double re = 1e-3 + halton(i, 2) * (re_max - 1e-3);
        double im = im_hi > im_lo
                        ? im_lo + halton(i, 3) * (im_hi - im_lo)
                        : 0.0;
        complexd z{re, im};
        if (in_E_eps_delta(z, params, spec)) out.push_back(z);
    }
    if (out.size() < count)
        fail("sampling", "constrained region yielded too few sample points");
    return out;
}

std::vector<complexd> sample_E(const CalculusParams& params,
                               std::size_t count, double re_min,
                               double re_max) {
    if (count == 0) fail("invalid-argument", "sample count must be positive");
    if (!(re_min > 0.0) || !(re_max > re_min))
        fail("invalid-argument", "need 0 < re_min < re_max");
    std::vector<complexd> out;
    out.reserve(count);
    const std::size_t cap = std::max<std::size_t>(1000000, 4000 * count);
    for (std::size_t i = 1; i <= cap && out.size() < count; ++i) {
        double re = re_min + halton(i, 2) * (re_max - re_min);
        double im = -M_PI + halton(i, 3) * 2.0 * M_PI;
        complexd z{re, im};
        if (in_E(z, params)) out.push_back(z);
    }
    if (out.size() < count)
        fail("sampling", "E yielded too few sample points");
    return out;
}

SupBoundReport sup_integral_bound(const CalculusParams& params,
                                  const DomainSpec& spec,
                                  std::size_t sample_count) {
    auto zs = sample_constrained_region(params, spec, sample_count);
    SupBoundReport report;
    report.params = params;
    report.spec = spec;
    report.samples = zs.size();
    report.min_one_plus_w = std::numeric_limits<double>::infinity();
    report.worst_slack = std::numeric_limits<double>::infinity();
    const double d = double(params.d);
    for (complexd z : zs) {
        SupBoundSample sample;
        sample.z = z;
        sample.g_l1 = g_l1_closed_form(z, params);
        sample.one_plus_w_abs = std::abs(1.0 + std::exp(-z));
        sample.chain_rhs = std::pow(spec.epsilon, -0.5 * d) *
                           std::pow(2.0, d) *
                           std::pow(sample.one_plus_w_abs, -d);
        if (!(sample.g_l1 <= sample.chain_rhs * (1.0 + 1e-12)))
            report.chain_holds = false;
        report.sup_g_l1 = std::max(report.sup_g_l1, sample.g_l1);
        report.sup_chain_rhs = std::max(report.sup_chain_rhs, sample.chain_rhs);
        report.min_one_plus_w =
            std::min(report.min_one_plus_w, sample.one_plus_w_abs);
        double slack = sample.chain_rhs - sample.g_l1;
        if (slack < report.worst_slack) {
            report.worst_slack = slack;
            report.worst = sample;
        }
    }
    return report;
}

complexd z_from_s(complexd s) {
    return std::log((1.0 + s) / (1.0 - s));
}

double margin_sign_change_angle(const CalculusParams& params,
                                double s_modulus, double tol) {
    if (params.m_p == 0.0)
        fail("invalid-argument",
             "p = 2 puts the critical angle at pi/2, outside Re s > 0");
    if (!(s_modulus > 0.0) || !(s_modulus < 1.0))
        fail("invalid-argument", "s modulus must lie in (0, 1)");
    if (!(tol > 0.0)) fail("invalid-argument", "tolerance must be positive");
    const double crit = params.critical_arg();
    double lo = std::max(0.5 * crit, crit - 0.1);
    double hi = std::min(crit + 0.1, crit + 0.5 * (0.5 * M_PI - crit));
    auto eval = [&](double phi) {
        return margin(z_from_s(std::polar(s_modulus, phi)), params);
    };
    if (!(eval(lo) > 0.0) || !(eval(hi) < 0.0))
        fail("search-failure", "margin does not change sign on the bracket");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (eval(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ousect
