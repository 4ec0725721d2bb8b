// SPDX-License-Identifier: Apache-2.0
#include "ousect/hermite.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "ousect/errors.hpp"
#include "ousect/parallel.hpp"

namespace ousect {

double hermite_value(int n, double x) {
    if (n < 0) fail("invalid-argument", "Hermite degree must be >= 0");
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k < n; ++k) {
        double next = (x * cur - std::sqrt(double(k)) * prev) /
                      std::sqrt(double(k + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_values(double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = x;
    for (std::size_t k = 2; k < out.size(); ++k)
        out[k] = (x * out[k - 1] -
                  std::sqrt(double(k - 1)) * out[k - 2]) /
                 std::sqrt(double(k));
}

QuadratureRule gauss_hermite_rule(int order) {
    if (order < 1) fail("invalid-argument", "quadrature order must be >= 1");
    if (order > 64)
        fail("invalid-argument", "quadrature order capped at 64");
    // Jacobi matrix of the monic probabilists' Hermite recurrence:
    // zero diagonal, off-diagonal sqrt(k).  Eigenvalues are the nodes,
    // squared first eigenvector components the weights (total mass 1).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        double b = std::sqrt(double(k));
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success)
        fail("convergence", "Jacobi matrix eigendecomposition failed");
    QuadratureRule rule;
    rule.nodes.resize(std::size_t(order));
    rule.weights.resize(std::size_t(order));
    for (int i = 0; i < order; ++i) {
        rule.nodes[std::size_t(i)] = solver.eigenvalues()(i);
        double q0 = solver.eigenvectors()(0, i);
        rule.weights[std::size_t(i)] = q0 * q0;
    }
    return rule;
}

std::vector<MultiIndex> graded_indices(int max_degree, int d) {
    if (max_degree < 0)
        fail("invalid-argument", "max_degree must be >= 0");
    if (d < 1 || d > 3) fail("invalid-argument", "dimension must be 1, 2, or 3");
    std::vector<MultiIndex> out;
    for (int g = 0; g <= max_degree; ++g) {
        if (d == 1) {
            out.push_back({g, 0, 0});
        } else if (d == 2) {
            for (int a = g; a >= 0; --a) out.push_back({a, g - a, 0});
        } else {
            for (int a = g; a >= 0; --a)
                for (int b = g - a; b >= 0; --b)
                    out.push_back({a, b, g - a - b});
        }
    }
    return out;
}

HermiteExpansion expand_mu(
    const std::function<complexd(std::span<const double>)>& f, int max_degree,
    const CalculusParams& params, int quad_order) {
    if (quad_order == 0) quad_order = max_degree + 1;
    if (quad_order < max_degree + 1)
        fail("insufficient-quadrature",
             "Gauss-Hermite order must be at least max_degree + 1");
    const int d = params.d;
    QuadratureRule rule = gauss_hermite_rule(quad_order);
    const int q = int(rule.nodes.size());

    // Per-node Hermite value table, shared by all axes.
    std::vector<std::vector<double>> htab(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        htab[std::size_t(i)].resize(std::size_t(max_degree + 1));
        hermite_values(rule.nodes[std::size_t(i)], htab[std::size_t(i)]);
    }

    HermiteExpansion e;
    e.max_degree = max_degree;
    e.d = d;
    e.indices = graded_indices(max_degree, d);
    e.coefficients.assign(e.indices.size(), complexd{});

    std::size_t tensor_count = 1;
    for (int a = 0; a < d; ++a) tensor_count *= std::size_t(q);

    for (std::size_t flat = 0; flat < tensor_count; ++flat) {
        int idx[3] = {0, 0, 0};
        std::size_t rest = flat;
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = int(rest % std::size_t(q));
            rest /= std::size_t(q);
        }
        double x[3] = {0.0, 0.0, 0.0};
        double wt = 1.0;
        for (int a = 0; a < d; ++a) {
            x[a] = rule.nodes[std::size_t(idx[a])];
            wt *= rule.weights[std::size_t(idx[a])];
        }
        complexd fv =
            f(std::span<const double>(x, std::size_t(d)));
        if (fv == complexd{}) continue;
        complexd wfv = wt * fv;
        for (std::size_t k = 0; k < e.indices.size(); ++k) {
            const MultiIndex& alpha = e.indices[k];
            double hv = 1.0;
            for (int a = 0; a < d; ++a)
                hv *= htab[std::size_t(idx[a])][std::size_t(alpha[std::size_t(a)])];
            e.coefficients[k] += wfv * hv;
        }
    }
    return e;
}

HermiteExpansion expand_mu(const GridFunction& f, int max_degree,
                           const CalculusParams& params, int quad_order) {
    if (f.spec.dim != params.d)
        fail("invalid-argument", "grid dimension does not match params");
    return expand_mu(
        [&f](std::span<const double> x) { return f.interpolate(x); },
        max_degree, params, quad_order);
}

HermiteExpansion apply_semigroup_spectral(complexd z,
                                          const HermiteExpansion& e) {
    HermiteExpansion out = e;
    for (std::size_t k = 0; k < out.indices.size(); ++k) {
        const MultiIndex& alpha = out.indices[k];
        int degree = alpha[0] + alpha[1] + alpha[2];
        out.coefficients[k] *= std::exp(-double(degree) * z);
    }
    return out;
}

GridFunction synthesize(const HermiteExpansion& e, const GridSpec& spec) {
    if (spec.dim != e.d)
        fail("invalid-argument", "grid dimension does not match expansion");
    const int n = spec.axis_nodes();
    // Per-axis-coordinate Hermite tables; axes share coordinates.
    std::vector<std::vector<double>> htab(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        htab[std::size_t(i)].resize(std::size_t(e.max_degree + 1));
        hermite_values(spec.coord(i), htab[std::size_t(i)]);
    }
    GridFunction out(spec);
    parallel_for(spec.node_count(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t flat = lo; flat < hi; ++flat) {
            int idx[3] = {0, 0, 0};
            std::size_t rest = flat;
            for (int a = e.d - 1; a >= 0; --a) {
                idx[a] = int(rest % std::size_t(n));
                rest /= std::size_t(n);
            }
            complexd acc{};
            for (std::size_t k = 0; k < e.indices.size(); ++k) {
                if (e.coefficients[k] == complexd{}) continue;
                const MultiIndex& alpha = e.indices[k];
                double hv = 1.0;
                for (int a = 0; a < e.d; ++a)
                    hv *= htab[std::size_t(idx[a])]
                              [std::size_t(alpha[std::size_t(a)])];
                acc += e.coefficients[k] * hv;
            }
            out.values[flat] = acc;
        }
    });
    return out;
}

}  // namespace ousect
