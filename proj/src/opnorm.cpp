// SPDX-License-Identifier: Apache-2.0
#include "ousect/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ousect/domination.hpp"
#include "ousect/errors.hpp"
#include "ousect/kernel.hpp"
#include "ousect/parallel.hpp"
#include "ousect/rng.hpp"
#include "ousect/simd/backend.hpp"

namespace ousect {

namespace {

void check_matrix_size(const GridSpec& spec) {
    double count = double(spec.node_count());
    if (count * count > 1e8)
        fail("size", "dense kernel matrix would exceed 1e8 entries");
}

std::vector<double> axis_coords(const GridSpec& spec) {
    std::vector<double> coords(std::size_t(spec.axis_nodes()));
    for (int i = 0; i < spec.axis_nodes(); ++i)
        coords[std::size_t(i)] = spec.coord(i);
    return coords;
}

}  // namespace

ComplexMatrix kernel_matrix(complexd z, const CalculusParams& params,
                            const GridSpec& spec, Measure measure) {
    if (spec.dim != params.d)
        fail("invalid-argument", "grid dimension does not match params");
    check_matrix_size(spec);
    KernelConsts c = make_kernel_consts(z, params);

    const int n = spec.axis_nodes();
    const int d = spec.dim;
    const std::size_t count = spec.node_count();
    const auto coords = axis_coords(spec);
    std::vector<double> lw(count);
    for (std::size_t j = 0; j < count; ++j) lw[j] = spec.lebesgue_weight(j);

    std::size_t prefix_count = 1;
    for (int a = 0; a < d - 1; ++a) prefix_count *= std::size_t(n);

    const auto& backend = simd::active_backend();
    const bool mu = measure == Measure::Mu;

    ComplexMatrix out;
    out.rows = out.cols = count;
    out.data.resize(count * count);

    parallel_for(count, [&](std::size_t lo, std::size_t hi) {
        std::vector<detail::AxisQuad> aq(static_cast<std::size_t>(d));
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = spec.node(i);
            for (int a = 0; a < d; ++a)
                aq[std::size_t(a)] =
                    mu ? detail::mehler_axis_quad(c, x[std::size_t(a)])
                       : detail::conjugated_axis_quad(c, x[std::size_t(a)]);
            complexd* row = out.data.data() + i * count;
            for (std::size_t pre = 0; pre < prefix_count; ++pre) {
                complexd q0 = aq[std::size_t(d - 1)].q0;
                std::size_t rest = pre;
                for (int a = d - 2; a >= 0; --a) {
                    double ya = coords[rest % std::size_t(n)];
                    rest /= std::size_t(n);
                    q0 += detail::axis_quad_value(aq[std::size_t(a)], ya);
                }
                backend.cplx_quad_exp_row(
                    c.prefactor, q0, aq[std::size_t(d - 1)].q1,
                    aq[std::size_t(d - 1)].q2, coords.data(), std::size_t(n),
                    row + pre * std::size_t(n));
            }
            for (std::size_t j = 0; j < count; ++j) row[j] *= lw[j];
        }
    });
    return out;
}

RealMatrix weighted_magnitude_matrix(complexd z, const CalculusParams& params,
                                     const GridSpec& spec, Measure measure) {
    if (spec.dim != params.d)
        fail("invalid-argument", "grid dimension does not match params");
    check_matrix_size(spec);
    KernelConsts c = make_kernel_consts(z, params);

    const int n = spec.axis_nodes();
    const int d = spec.dim;
    const std::size_t count = spec.node_count();
    const auto coords = axis_coords(spec);
    const double p = params.p;
    const double pc = 1.0 - 1.0 / p;  // 1/p'

    // Left and right norm weights making the induced l^p norm of |K~|
    // the operator-norm bound on the tagged measure's L^p.
    std::vector<double> left(count), right(count);
    for (std::size_t j = 0; j < count; ++j) {
        double lwj = spec.lebesgue_weight(j);
        if (measure == Measure::Lambda) {
            left[j] = std::pow(lwj, 1.0 / p);
            right[j] = std::pow(lwj, pc);
        } else {
            double muw = spec.mu_weight(j);
            left[j] = std::pow(muw, 1.0 / p);
            right[j] = lwj * std::pow(muw, -1.0 / p);
        }
    }

    std::size_t prefix_count = 1;
    for (int a = 0; a < d - 1; ++a) prefix_count *= std::size_t(n);

    const auto& backend = simd::active_backend();
    const bool mu = measure == Measure::Mu;

    RealMatrix out;
    out.rows = out.cols = count;
    out.data.resize(count * count);

    parallel_for(count, [&](std::size_t lo, std::size_t hi) {
        std::vector<detail::AxisQuad> aq(static_cast<std::size_t>(d));
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = spec.node(i);
            for (int a = 0; a < d; ++a)
                aq[std::size_t(a)] =
                    mu ? detail::mehler_axis_quad(c, x[std::size_t(a)])
                       : detail::conjugated_axis_quad(c, x[std::size_t(a)]);
            double* row = out.data.data() + i * count;
            for (std::size_t pre = 0; pre < prefix_count; ++pre) {
                double q0 = aq[std::size_t(d - 1)].q0.real();
                std::size_t rest = pre;
                for (int a = d - 2; a >= 0; --a) {
                    double ya = coords[rest % std::size_t(n)];
                    rest /= std::size_t(n);
                    q0 += detail::axis_quad_value(aq[std::size_t(a)], ya)
                              .real();
                }
                backend.real_quad_exp_row(
                    c.abs_prefactor, q0, aq[std::size_t(d - 1)].q1.real(),
                    aq[std::size_t(d - 1)].q2.real(), coords.data(),
                    std::size_t(n), row + pre * std::size_t(n));
            }
            for (std::size_t j = 0; j < count; ++j)
                row[j] *= left[i] * right[j];
        }
    });
    return out;
}

PNormResult p_norm_upper(const RealMatrix& magnitudes, double p,
                         const PowerIterOptions& options) {
    if (!(p > 1.0) || !std::isfinite(p))
        fail("invalid-argument", "norm exponent must be finite and > 1");
    if (magnitudes.rows == 0 || magnitudes.cols == 0)
        fail("invalid-argument", "matrix must be non-empty");
    for (double e : magnitudes.data)
        if (!(e >= 0.0) || !std::isfinite(e))
            fail("invalid-argument", "matrix entries must be >= 0 and finite");

    const std::size_t rows = magnitudes.rows;
    const std::size_t cols = magnitudes.cols;
    const double pdual = p / (p - 1.0);

    auto norm_p = [](const std::vector<double>& v, double q) {
        double acc = 0.0;
        for (double e : v) acc += std::pow(e, q);
        return std::pow(acc, 1.0 / q);
    };

    SplitMix64 rng(options.seed);
    std::vector<double> x(cols);
    for (double& e : x) e = rng.uniform(0.5, 1.5);
    double nx = norm_p(x, p);
    for (double& e : x) e /= nx;

    std::vector<double> y(rows), u(rows), v(cols);
    double prev = -1.0;
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        parallel_for(rows, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r) {
                const double* row = magnitudes.data.data() + r * cols;
                double acc = 0.0;
                for (std::size_t jc = 0; jc < cols; ++jc)
                    acc += row[jc] * x[jc];
                y[r] = acc;
            }
        });
        double est = norm_p(y, p);
        if (est == 0.0) return {0.0, x, iter};
        if (prev >= 0.0 && std::abs(est - prev) <= options.stagnation * est)
            return {est, x, iter};
        prev = est;

        for (std::size_t r = 0; r < rows; ++r)
            u[r] = std::pow(y[r] / est, p - 1.0);
        std::fill(v.begin(), v.end(), 0.0);
        for (std::size_t r = 0; r < rows; ++r) {
            const double* row = magnitudes.data.data() + r * cols;
            const double ur = u[r];
            if (ur == 0.0) continue;
            for (std::size_t jc = 0; jc < cols; ++jc)
                v[jc] += row[jc] * ur;
        }
        for (std::size_t jc = 0; jc < cols; ++jc)
            v[jc] = std::pow(v[jc], pdual - 1.0);
        double nv = norm_p(v, p);
        if (nv == 0.0) return {0.0, x, iter};
        for (std::size_t jc = 0; jc < cols; ++jc) x[jc] = v[jc] / nv;
    }
    throw ConvergenceError("p-norm power iteration did not stagnate", prev);
}

namespace {

NormEstimate norm_estimate_impl(complexd z, const CalculusParams& params,
                                const GridSpec& spec, Measure measure,
                                const PowerIterOptions& options,
                                const char* method) {
    RealMatrix mags = weighted_magnitude_matrix(z, params, spec, measure);
    PNormResult pr = p_norm_upper(mags, params.p, options);

    // Map the l^p witness back to function coordinates and realize the
    // lower bound through the complex quadrature route.
    GridFunction f(spec);
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        double w = measure == Measure::Mu ? spec.mu_weight(j)
                                          : spec.lebesgue_weight(j);
        f.values[j] = pr.witness[j] * std::pow(w, -1.0 / params.p);
    }
    GridFunction tf = apply_semigroup_quadrature(z, f, measure, params);
    double lower = grid_norm_lp(tf, params.p, measure) /
                   grid_norm_lp(f, params.p, measure);

    NormEstimate est;
    est.lower = lower;
    est.upper = pr.norm;
    est.method = method;
    est.seed = options.seed;
    est.grid = spec;
    est.params = params;
    est.z = z;
    est.witness = std::move(f.values);
    est.iterations = pr.iterations;
    return est;
}

}  // namespace

NormEstimate contraction_check(double t, const CalculusParams& params,
                               const GridSpec& spec,
                               const PowerIterOptions& options) {
    if (!(t > 0.0) || !std::isfinite(t))
        fail("domain", "real time must be positive and finite");
    if (t < 1e-3)
        fail("resolution", "t below the 1e-3 resolution guard");
    double boundary_mass = params.d * std::erfc(spec.radius / std::sqrt(2.0));
    if (boundary_mass > 1e-8)
        fail("resolution",
             "grid radius leaves Gaussian boundary mass above 1e-8");
    return norm_estimate_impl(complexd(t, 0.0), params, spec, Measure::Mu,
                              options, "mu-magnitude-power-iteration");
}

NormEstimate complex_norm_estimate(complexd z, const CalculusParams& params,
                                   const GridSpec& spec,
                                   const PowerIterOptions& options) {
    return norm_estimate_impl(z, params, spec, Measure::Lambda, options,
                              "lambda-magnitude-power-iteration");
}

double trial_ratio_gaussian(complexd z, const CalculusParams& params,
                            complexd a) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        fail("invalid-argument", "trial parameter must be finite");
    KernelConsts c = make_kernel_consts(z, params);
    complexd alpha = 0.5 / c.v + a;
    if (!(alpha.real() > 0.0))
        fail("trial-invalid",
             "Gaussian integral parameter must have positive real part");
    complexd den = 1.0 + 2.0 * a * c.v;  // = 2 v alpha
    complexd b = a * c.w * c.w / den;
    double na = 1.0 + 2.0 * params.p * a.real();
    double nb = 1.0 + 2.0 * params.p * b.real();
    if (!(na > 0.0))
        fail("trial-invalid", "trial Gaussian is not in L^p(mu)");
    if (!(nb > 0.0))
        fail("trial-invalid", "output Gaussian is not in L^p(mu)");
    double d = double(params.d);
    return std::pow(std::abs(den), -0.5 * d) *
           std::pow(na / nb, d / (2.0 * params.p));
}

namespace {

void validate_blowup_options(const BlowupOptions& o) {
    if (o.s_moduli.empty())
        fail("invalid-argument", "need at least one |s| value");
    for (double sm : o.s_moduli)
        if (!(sm > 0.0) || !(sm < 1.0))
            fail("invalid-argument", "|s| values must lie in (0, 1)");
    if (o.a_grid < 2) fail("invalid-argument", "a-grid needs >= 2 points");
    if (o.rounds < 1) fail("invalid-argument", "need >= 1 refinement round");
    if (!(o.shrink > 1.0))
        fail("invalid-argument", "shrink factor must exceed 1");
    if (!(o.contrast_frac > 0.0) || !(o.contrast_frac < 1.0))
        fail("invalid-argument", "contrast fraction must lie in (0, 1)");
}

BlowupSide scan_side(const CalculusParams& params, double arg_s,
                     const BlowupOptions& o) {
    BlowupSide side;
    side.arg_s = arg_s;
    for (double sm : o.s_moduli) {
        complexd z = z_from_s(std::polar(sm, arg_s));
        side.zs.push_back(z);
        double m = margin(z, params);
        side.margins.push_back(m);
        side.young.push_back(m > 0.0
                                 ? g_l1_closed_form(z, params)
                                 : std::numeric_limits<double>::quiet_NaN());

        complexd center{0.0, 0.0};
        double hw = o.a_window;
        for (int round = 0; round < o.rounds; ++round) {
            double round_best = -1.0;
            complexd round_a;
            for (int ui = 0; ui < o.a_grid; ++ui) {
                double du = -hw + 2.0 * hw * ui / (o.a_grid - 1);
                for (int vi = 0; vi < o.a_grid; ++vi) {
                    double dv = -hw + 2.0 * hw * vi / (o.a_grid - 1);
                    complexd a = center + complexd(du, dv);
                    try {
                        double r = trial_ratio_gaussian(z, params, a);
                        ++side.valid;
                        if (r > round_best) {
                            round_best = r;
                            round_a = a;
                        }
                    } catch (const Error& e) {
                        if (e.code() != "trial-invalid") throw;
                        ++side.invalid;
                    }
                }
            }
            if (round_best < 0.0) break;
            if (round_best > side.max_ratio) {
                side.max_ratio = round_best;
                side.best_a = round_a;
                side.best_z = z;
            }
            center = round_a;
            hw /= o.shrink;
        }
    }
    return side;
}

}  // namespace

BlowupReport blowup_scan(const CalculusParams& params, double target_arg_s,
                         const BlowupOptions& options) {
    validate_blowup_options(options);
    const double crit = params.critical_arg();
    if (!(target_arg_s > crit))
        fail("invalid-argument",
             "probe target must lie strictly beyond the critical angle");

    BlowupReport report;
    report.params = params;
    report.critical_arg = crit;
    report.target_arg_s = target_arg_s;
    report.contrast_arg_s = options.contrast_frac * crit;
    report.contrast = scan_side(params, report.contrast_arg_s, options);

    if (target_arg_s >= 0.5 * std::numbers::pi) {
        // arg s >= pi/2 requires Re s <= 0, unreachable for Re z > 0.
        report.applicable = false;
        return report;
    }
    report.outside = scan_side(params, target_arg_s, options);
    if (report.outside.valid == 0)
        fail("inconclusive-probe", "every trial on the a-grid was invalid");

    for (double yb : report.contrast.young)
        if (std::isfinite(yb))
            report.contrast_young_max =
                std::max(report.contrast_young_max, yb);
    if (report.contrast_young_max > 0.0)
        report.exceed_factor =
            report.outside.max_ratio / report.contrast_young_max;
    return report;
}

}  // namespace ousect
