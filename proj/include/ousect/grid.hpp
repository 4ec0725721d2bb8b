// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ousect/params.hpp"

namespace ousect {

// Which measure a grid function's values are weighted against:
// Mu      - the Gaussian measure (2*pi)^{-d/2} e^{-|x|^2/2} dx,
// Lambda  - plain Lebesgue measure (the unitarily conjugated picture).
enum class Measure { Mu, Lambda };

// Uniform symmetric tensor grid: per-axis nodes (i - m) * step for
// i = 0..2m, m = radius / step.  Requires radius to be an integer
// multiple of step so the origin is a node and the grid is symmetric.
struct GridSpec {
    double radius = 10.0;
    double step = 0.05;
    int dim = 1;
    int half_count = 200;  // radius / step for the defaults above

    static GridSpec make(double radius, double step, int dim);

    int axis_nodes() const { return 2 * half_count + 1; }
    std::size_t node_count() const;
    double coord(int i) const { return (i - half_count) * step; }
    // Trapezoid weight along one axis; halved at the two end nodes.
    double axis_weight(int i) const {
        return (i == 0 || i == 2 * half_count) ? 0.5 * step : step;
    }

    // Decodes a flat row-major index (last axis fastest) to coordinates.
    std::array<double, 3> node(std::size_t flat) const;
    // Product of the per-axis trapezoid weights at a node.
    double lebesgue_weight(std::size_t flat) const;
    // Gaussian density (2*pi)^{-d/2} e^{-|x|^2/2} times lebesgue_weight.
    double mu_weight(std::size_t flat) const;

    bool operator==(const GridSpec&) const = default;
};

// Complex samples of a function on a GridSpec, row-major, last axis fastest.
struct GridFunction {
    GridSpec spec;
    std::vector<complexd> values;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s)
        : spec(s), values(s.node_count(), complexd{}) {}

    static GridFunction sample(
        const GridSpec& spec,
        const std::function<complexd(std::span<const double>)>& f);

    // Multilinear interpolation inside the grid box; zero outside, which
    // matches the Gaussian-decay use these functions are put to.
    complexd interpolate(std::span<const double> x) const;
};

// Discrete L^p norm.  Measure::Mu weights |f_i|^p by mu_weight, so the
// result approximates the L^p(mu) norm; Measure::Lambda uses the plain
// trapezoid weights.
double grid_norm_lp(const GridFunction& f, double p, Measure measure);

double phi(std::span<const double> x);  // |x|^2 / 2

}  // namespace ousect
