// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ousect/grid.hpp"
#include "ousect/params.hpp"

namespace ousect {

struct ComplexMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<complexd> data;  // row-major

    complexd& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    complexd at(std::size_t r, std::size_t c) const {
        return data[r * cols + c];
    }
};

struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;  // row-major

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Discretized integral operator: K[i][j] = kernel(z, x_i, y_j) * w_j with
// trapezoid weights w_j.  Measure::Mu uses the defining kernel,
// Measure::Lambda the conjugated one.  node_count^2 > 1e8 is a "size"
// error (matrices are dense).
ComplexMatrix kernel_matrix(complexd z, const CalculusParams& params,
                            const GridSpec& spec, Measure measure);

// Entrywise |K| conjugated by the norm weights of the tagged measure, so
// its induced l^p norm equals the discretized operator-norm upper bound
// on L^p of that measure.  Both tags describe the same operator through
// different pictures; they are kept as independent evaluation routes.
RealMatrix weighted_magnitude_matrix(complexd z, const CalculusParams& params,
                                     const GridSpec& spec, Measure measure);

struct PowerIterOptions {
    int max_iter = 500;
    double stagnation = 1e-12;  // relative estimate change
    std::uint64_t seed = 42;
};

struct PNormResult {
    double norm = 0.0;
    std::vector<double> witness;  // unit l^p vector realizing norm
    int iterations = 0;
};

// Induced l^p -> l^p norm of a nonnegative matrix by the nonlinear power
// method (globally convergent for positive matrices).  The result also
// upper-bounds the norm of any complex matrix with these magnitudes.
// Non-stagnation within the cap throws ConvergenceError with the last
// estimate.
PNormResult p_norm_upper(const RealMatrix& magnitudes, double p,
                         const PowerIterOptions& options = {});

struct NormEstimate {
    double lower = 0.0;  // realized by the stored witness
    double upper = 0.0;  // from the magnitude-matrix power iteration
    std::string method;
    std::uint64_t seed = 42;
    GridSpec grid;
    CalculusParams params;
    complexd z;
    std::vector<complexd> witness;  // grid-function values
    int iterations = 0;
};

// Discretized L^p(mu) -> L^p(mu) norm of the real-time semigroup.
// Contractivity certifies as upper <= 1 + 1e-3 (discretization slack).
// Guards: t < 1e-3 is a "resolution" error, as is a grid whose Gaussian
// boundary mass exceeds 1e-8.
NormEstimate contraction_check(double t, const CalculusParams& params,
                               const GridSpec& spec,
                               const PowerIterOptions& options = {});

// Same estimate at complex time in the conjugated (Lebesgue) picture;
// inside the constrained region the upper stays within 1e-4 of the
// closed-form L^1 Young bound.
NormEstimate complex_norm_estimate(complexd z, const CalculusParams& params,
                                   const GridSpec& spec,
                                   const PowerIterOptions& options = {});

// ||T_z f_a|| / ||f_a|| in L^p(mu) for the Gaussian trial
// f_a(x) = exp(-a|x|^2), in closed form.  Trials whose defining integral
// or norms diverge throw "trial-invalid" (distinct from unboundedness
// evidence).
double trial_ratio_gaussian(complexd z, const CalculusParams& params,
                            complexd a);

struct BlowupOptions {
    std::vector<double> s_moduli{0.15, 0.25, 0.35, 0.5, 0.65, 0.8, 0.9};
    int a_grid = 17;         // a-grid points per axis and round
    double a_window = 4.0;   // initial half-width of the complex a window
    int rounds = 26;         // recentred refinements, window / shrink each
    double shrink = 4.0;
    double contrast_frac = 0.9;  // contrast angle as fraction of critical
};

struct BlowupSide {
    double arg_s = 0.0;
    std::vector<complexd> zs;      // one z per |s|
    std::vector<double> margins;   // margin(z)
    std::vector<double> young;     // L^1 Young bound; NaN when margin <= 0
    double max_ratio = 0.0;
    complexd best_a;
    complexd best_z;
    std::size_t valid = 0, invalid = 0;
};

struct BlowupReport {
    CalculusParams params;
    bool applicable = true;  // false when the target angle needs Re s <= 0
    double critical_arg = 0.0;
    double target_arg_s = 0.0;
    double contrast_arg_s = 0.0;
    BlowupSide outside, contrast;
    double contrast_young_max = 0.0;
    double exceed_factor = 0.0;  // outside max ratio / contrast Young bound
};

// Trial-ratio maximization at arg s = target (strictly beyond the critical
// angle, else "invalid-argument") over a refined complex a-grid, with a
// bounded contrast scan inside the sector.  Evidence, not proof: ratios
// beyond the inside-sector Young bound indicate blow-up.  target >= pi/2
// is unreachable for Re z > 0 and reports applicable = false; an outside
// scan where every trial is invalid throws "inconclusive-probe".
BlowupReport blowup_scan(const CalculusParams& params, double target_arg_s,
                         const BlowupOptions& options = {});

}  // namespace ousect
