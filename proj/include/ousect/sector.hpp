// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ousect/params.hpp"

namespace ousect {

// z with |z - i*pi*(2k+1)| below this is treated as sitting on a pole of
// the kernel prefactor.
inline constexpr double kPoleThreshold = 1e-12;

// Distance from z to the pole lattice i*pi*(2Z+1).
double pole_distance(complexd z);

// True when z = i*pi*k exactly (k any integer), the zero/pole set of s.
bool on_imaginary_pi_lattice(complexd z);

// s_z = (1 - e^{-z}) / (1 + e^{-z}) = tanh(z/2).  2*pi*i periodic, odd,
// maps the open right half-plane into the open unit disk.  Throws a
// "pole-proximity" error within kPoleThreshold of i*pi*(2Z+1).
complexd s_map(complexd z);

// Open sector {w != 0 : |arg w| < theta}.
bool in_sector(complexd w, double theta);

// Membership in E: s_z lands in the open sector of half-angle
// pi/2 - theta_p and z avoids i*pi*Z (where s_z is zero or undefined).
bool in_E(complexd z, const CalculusParams& params);

// Membership in the constrained region: cos^2(arg s_z) > m_p^2 + epsilon
// on the Re s_z > 0 branch, with dist(z, i*pi*(2Z+1)) > delta and
// z not in 2*pi*i*Z.  The cos^2 condition alone cannot tell s from -s;
// restricting to Re s_z > 0 keeps the region inside E.
bool in_E_eps_delta(complexd z, const CalculusParams& params,
                    const DomainSpec& spec);

struct ContainmentReport {
    CalculusParams params;
    double eps_prime = 0.0;
    double radius_cap = 0.0;
    std::size_t samples = 0;
    DomainSpec spec;                 // certified pair
    double worst_cos2_margin = 0.0;  // min over samples of cos^2(arg s_z) - m_p^2
    double min_pole_distance = 0.0;
    complexd worst_z;
};

// Certifies that the sector {|arg z| <= critical_arg - eps_prime,
// 0 < |z| <= radius_cap} lies inside some constrained region, by sampling
// the sector with a low-discrepancy set plus its corner points and then
// selecting the largest (epsilon, delta) from the dyadic grids
// {2^-1..2^-20} x {2^-1..2^-10} that every sample satisfies.  Throws a
// "search-failure" error when no grid pair works.
ContainmentReport verify_sector_containment(const CalculusParams& params,
                                            double eps_prime,
                                            std::size_t sample_count,
                                            double radius_cap);

enum class RegionLabel : int {
    Outside = 0,
    InteriorE = 1,      // in E but not in the constrained region
    Constrained = 2,    // in E_{epsilon,delta}
};

struct Window {
    double re_min, re_max;
    double im_min, im_max;
};

struct Raster {
    Window window{};
    int nx = 0, ny = 0;  // columns over Re, rows over Im
    CalculusParams params;
    DomainSpec spec;
    std::vector<RegionLabel> labels;  // row-major, Im ascending, Re fastest

    complexd point(int row, int col) const;
};

// Classifies an nx * ny grid of points over the window.  Rows and columns
// both need at least 2 points; an inverted window is an "empty-window"
// error.
Raster domain_map_raster(const CalculusParams& params, const DomainSpec& spec,
                         const Window& window, int nx, int ny);

}  // namespace ousect
