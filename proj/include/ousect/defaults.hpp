// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ousect/grid.hpp"
#include "ousect/params.hpp"

namespace ousect {

// Single source of truth for tolerances and default configurations.
// The CLI prints this table under --show-defaults and the acceptance
// runner pins its thresholds here.
struct Defaults {
    // Pointwise identity between the two kernel factorizations.
    static constexpr double tol_kernel_identity = 1e-12;
    // Mass conservation of the quadrature semigroup on f == 1.
    static constexpr double tol_conservativity = 1e-8;
    // Quadrature semigroup against the spectral route.
    static constexpr double tol_semigroup = 1e-6;
    // Spectral coefficients after expand/evolve/synthesize.
    static constexpr double tol_spectral = 1e-8;
    // Allowed excess over 1 for the real-time contraction upper bound.
    static constexpr double contraction_slack = 1e-3;
    // Pointwise domination may dip this far below zero (roundoff).
    static constexpr double domination_floor = -1e-12;
    // Closed-form L^1 mass of the dominating Gaussian vs quadrature.
    static constexpr double tol_g_l1 = 1e-8;
    // p == 2 closed-form simplification of the dominating mass.
    static constexpr double tol_p2_simplification = 1e-12;
    // Operator-norm upper bound may exceed the convolution bound by this.
    static constexpr double young_slack = 1e-4;
    // Ratio the blow-up probe must reach to count as decisive evidence.
    static constexpr double blowup_exceed_factor = 10.0;
    // Bisection tolerance for locating the margin sign change.
    static constexpr double bisect_tol = 1e-8;
    // Deterministic seed for every sampled routine.
    static constexpr unsigned long long seed = 42;

    static DomainSpec domain_spec() { return DomainSpec{}; }

    static GridSpec grid_for(int d) {
        switch (d) {
            case 1: return GridSpec::make(10.0, 0.05, 1);
            case 2: return GridSpec::make(6.0, 0.1, 2);
            default: return GridSpec::make(3.0, 0.25, 3);
        }
    }

    // Norm matrices are dense over node pairs, so these grids balance the
    // 1e8-entry size guard against the 1e-8 Gaussian boundary-mass guard
    // (radius >= ~5.8 keeps d * erfc(R / sqrt(2)) below it).
    static GridSpec norm_grid_for(int d) {
        switch (d) {
            case 1: return GridSpec::make(8.0, 0.05, 1);
            case 2: return GridSpec::make(6.0, 0.2, 2);
            default: return GridSpec::make(6.0, 0.75, 3);
        }
    }
};

}  // namespace ousect
