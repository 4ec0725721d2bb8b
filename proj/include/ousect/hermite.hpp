// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ousect/grid.hpp"
#include "ousect/params.hpp"

namespace ousect {

// L^2(mu)-orthonormal probabilists' Hermite polynomial
// h_n = He_n / sqrt(n!), evaluated by the stable normalized recurrence
// h_{n+1} = (x h_n - sqrt(n) h_{n-1}) / sqrt(n+1).
double hermite_value(int n, double x);

// Fills out[k] = h_k(x) for k = 0..out.size()-1 in one recurrence pass.
void hermite_values(double x, std::span<double> out);

// Gauss quadrature for the standard normal weight: integrates
// polynomials of degree <= 2*order - 1 exactly against mu (d = 1).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // sum to 1
};
QuadratureRule gauss_hermite_rule(int order);

using MultiIndex = std::array<int, 3>;  // unused trailing axes stay 0

// All multi-indices with |alpha| <= max_degree in graded lexicographic
// order: degree blocks are contiguous, first axis most significant.
std::vector<MultiIndex> graded_indices(int max_degree, int d);

// Coefficients of a function in the Hermite ONB up to total degree N.
struct HermiteExpansion {
    int max_degree = 0;
    int d = 1;
    std::vector<MultiIndex> indices;    // graded_indices(max_degree, d)
    std::vector<complexd> coefficients;
};

// c_alpha = integral of f * h_alpha dmu by tensor Gauss-Hermite quadrature
// of the given per-axis order (default N + 1, the minimum for exactness on
// polynomials of degree <= N).  Lower orders are an
// "insufficient-quadrature" error.
HermiteExpansion expand_mu(
    const std::function<complexd(std::span<const double>)>& f, int max_degree,
    const CalculusParams& params, int quad_order = 0);

// Grid-function overload: evaluates f by multilinear interpolation
// (zero outside the grid box).
HermiteExpansion expand_mu(const GridFunction& f, int max_degree,
                           const CalculusParams& params, int quad_order = 0);

// The semigroup as a spectral multiplier: c_alpha -> e^{-|alpha| z} c_alpha.
HermiteExpansion apply_semigroup_spectral(complexd z,
                                          const HermiteExpansion& e);

// Pointwise sum of the expansion on a grid.
GridFunction synthesize(const HermiteExpansion& e, const GridSpec& spec);

}  // namespace ousect
