// SPDX-License-Identifier: Apache-2.0
#include "ousect/grid.hpp"

#include <cmath>

#include "ousect/errors.hpp"
#include "ousect/parallel.hpp"

namespace ousect {

double phi(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return 0.5 * s;
}

GridSpec GridSpec::make(double radius, double step, int dim) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        fail("invalid-argument", "grid radius must be positive and finite");
    if (!(step > 0.0) || !std::isfinite(step))
        fail("invalid-argument", "grid step must be positive and finite");
    if (dim < 1 || dim > 3)
        fail("invalid-argument", "grid dimension must be 1, 2, or 3");
    double ratio = radius / step;
    double m = std::round(ratio);
    if (std::abs(ratio - m) > 1e-9 * ratio || m < 1.0)
        fail("invalid-argument",
             "grid radius must be a positive integer multiple of step");
    GridSpec spec;
    spec.radius = radius;
    spec.step = step;
    spec.dim = dim;
    spec.half_count = int(m);
    return spec;
}

std::size_t GridSpec::node_count() const {
    std::size_t n = std::size_t(axis_nodes());
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= n;
    return total;
}

std::array<double, 3> GridSpec::node(std::size_t flat) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::size_t n = std::size_t(axis_nodes());
    for (int a = dim - 1; a >= 0; --a) {
        x[std::size_t(a)] = coord(int(flat % n));
        flat /= n;
    }
    return x;
}

double GridSpec::lebesgue_weight(std::size_t flat) const {
    double w = 1.0;
    std::size_t n = std::size_t(axis_nodes());
    for (int a = 0; a < dim; ++a) {
        w *= axis_weight(int(flat % n));
        flat /= n;
    }
    return w;
}

double GridSpec::mu_weight(std::size_t flat) const {
    auto x = node(flat);
    double density = std::pow(2.0 * M_PI, -0.5 * dim) *
                     std::exp(-phi(std::span<const double>(x.data(),
                                                           std::size_t(dim))));
    return density * lebesgue_weight(flat);
}

GridFunction GridFunction::sample(
    const GridSpec& spec,
    const std::function<complexd(std::span<const double>)>& f) {
    GridFunction out(spec);
    parallel_for(spec.node_count(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = spec.node(i);
            out.values[i] = f(std::span<const double>(x.data(),
                                                      std::size_t(spec.dim)));
        }
    });
    return out;
}

complexd GridFunction::interpolate(std::span<const double> x) const {
    const int d = spec.dim;
    if (int(x.size()) != d)
        fail("invalid-argument", "interpolation point has wrong dimension");
    int base[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    const int n = spec.axis_nodes();
    for (int a = 0; a < d; ++a) {
        if (std::abs(x[std::size_t(a)]) > spec.radius) return complexd{};
        double t = (x[std::size_t(a)] + spec.radius) / spec.step;
        int i = int(std::floor(t));
        if (i >= n - 1) i = n - 2;
        if (i < 0) i = 0;
        base[a] = i;
        frac[a] = t - i;
    }
    std::size_t stride[3] = {1, 1, 1};
    for (int a = d - 2; a >= 0; --a)
        stride[a] = stride[a + 1] * std::size_t(n);
    complexd acc{};
    for (int corner = 0; corner < (1 << d); ++corner) {
        double w = 1.0;
        std::size_t flat = 0;
        for (int a = 0; a < d; ++a) {
            int bit = (corner >> a) & 1;
            w *= bit ? frac[a] : 1.0 - frac[a];
            flat += stride[a] * std::size_t(base[a] + bit);
        }
        acc += w * values[flat];
    }
    return acc;
}

double grid_norm_lp(const GridFunction& f, double p, Measure measure) {
    if (!(p >= 1.0) || !std::isfinite(p))
        fail("invalid-argument", "norm exponent must be finite and >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double w = measure == Measure::Mu ? f.spec.mu_weight(i)
                                          : f.spec.lebesgue_weight(i);
        acc += w * std::pow(std::abs(f.values[i]), p);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace ousect
