// SPDX-License-Identifier: Apache-2.0
#include "ousect/sector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ousect/halton.hpp"
#include "ousect/parallel.hpp"

namespace ousect {

double pole_distance(complexd z) {
    // Nearest odd multiple of pi to Im z: solve 2k+1 ~ Im z / pi.
    double k = std::round((z.imag() / M_PI - 1.0) / 2.0);
    double target = M_PI * (2.0 * k + 1.0);
    return std::hypot(z.real(), z.imag() - target);
}

bool on_imaginary_pi_lattice(complexd z) {
    if (z.real() != 0.0) return false;
    double k = std::round(z.imag() / M_PI);
    return z.imag() == k * M_PI;
}

static bool on_imaginary_2pi_lattice(complexd z) {
    if (z.real() != 0.0) return false;
    double k = std::round(z.imag() / (2.0 * M_PI));
    return z.imag() == k * (2.0 * M_PI);
}

complexd s_map(complexd z) {
    if (pole_distance(z) < kPoleThreshold)
        fail("pole-proximity", "z is within 1e-12 of a pole at i*pi*(2Z+1)");
    return std::tanh(0.5 * z);
}

bool in_sector(complexd w, double theta) {
    if (w == complexd(0.0, 0.0)) return false;
    return std::abs(std::arg(w)) < theta;
}

bool in_E(complexd z, const CalculusParams& params) {
    if (on_imaginary_pi_lattice(z)) return false;
    complexd s = std::tanh(0.5 * z);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return false;
    return in_sector(s, params.critical_arg());
}

bool in_E_eps_delta(complexd z, const CalculusParams& params,
                    const DomainSpec& spec) {
    if (!(pole_distance(z) > spec.delta)) return false;
    if (on_imaginary_2pi_lattice(z)) return false;
    complexd s = std::tanh(0.5 * z);
    // cos^2(arg s) is blind to the sign of s; only the Re s > 0 branch
    // lies inside the sector E works with.
    if (!(s.real() > 0.0)) return false;
    double n2 = std::norm(s);
    if (!std::isfinite(n2)) return false;
    double cos2 = s.real() * s.real() / n2;
    return cos2 > params.m_p * params.m_p + spec.epsilon;
}

ContainmentReport verify_sector_containment(const CalculusParams& params,
                                            double eps_prime,
                                            std::size_t sample_count,
                                            double radius_cap) {
    if (!(eps_prime > 0.0) || !(eps_prime < params.critical_arg()))
        fail("invalid-argument",
             "eps_prime must lie in (0, pi/2 - theta_p)");
    if (sample_count == 0)
        fail("invalid-argument", "sample_count must be positive");
    if (!(radius_cap > 0.0) || !std::isfinite(radius_cap))
        fail("invalid-argument", "radius_cap must be positive and finite");

    const double phi_max = params.critical_arg() - eps_prime;
    const double r_min = radius_cap * 1e-8;
    const double log_span = std::log(radius_cap / r_min);

    std::vector<complexd> points;
    points.reserve(sample_count + 6);
    // Corner points of the truncated sector: the boundary rays and the
    // central ray at both radius extremes.
    for (double r : {r_min, radius_cap})
        for (double phi : {-phi_max, 0.0, phi_max})
            points.push_back(std::polar(r, phi));
    for (std::size_t i = 1; points.size() < sample_count + 6; ++i) {
        double r = r_min * std::exp(halton(i, 2) * log_span);
        double phi = (2.0 * halton(i, 3) - 1.0) * phi_max;
        points.push_back(std::polar(r, phi));
    }

    ContainmentReport report;
    report.params = params;
    report.eps_prime = eps_prime;
    report.radius_cap = radius_cap;
    report.samples = points.size();
    report.worst_cos2_margin = std::numeric_limits<double>::infinity();
    report.min_pole_distance = std::numeric_limits<double>::infinity();

    const double mp2 = params.m_p * params.m_p;
    for (complexd z : points) {
        report.min_pole_distance =
            std::min(report.min_pole_distance, pole_distance(z));
        complexd s = s_map(z);
        double cos2 = s.real() * s.real() / std::norm(s);
        double m = cos2 - mp2;
        if (m < report.worst_cos2_margin) {
            report.worst_cos2_margin = m;
            report.worst_z = z;
        }
    }

    // Largest dyadic pair strictly below the sampled slack.
    double eps = 0.0;
    for (int k = 1; k <= 20; ++k) {
        double cand = std::ldexp(1.0, -k);
        if (cand < report.worst_cos2_margin && mp2 + cand <= 1.0) {
            eps = cand;
            break;
        }
    }
    double delta = 0.0;
    for (int k = 1; k <= 10; ++k) {
        double cand = std::ldexp(1.0, -k);
        if (cand < report.min_pole_distance) {
            delta = cand;
            break;
        }
    }
    if (eps == 0.0 || delta == 0.0)
        fail("search-failure",
             "no (epsilon, delta) grid pair admits the sampled sector");

    report.spec = DomainSpec{eps, delta};
    for (complexd z : points) {
        if (!in_E_eps_delta(z, params, report.spec))
            fail("search-failure",
                 "selected (epsilon, delta) rejected a sector sample");
    }
    return report;
}

complexd Raster::point(int row, int col) const {
    double re = window.re_min +
                (window.re_max - window.re_min) * col / double(nx - 1);
    double im = window.im_min +
                (window.im_max - window.im_min) * row / double(ny - 1);
    return {re, im};
}

Raster domain_map_raster(const CalculusParams& params, const DomainSpec& spec,
                         const Window& window, int nx, int ny) {
    if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max))
        fail("empty-window", "raster window has non-positive extent");
    if (nx < 2 || ny < 2)
        fail("invalid-argument", "raster needs at least 2 points per axis");
    validate_domain_spec(spec, params);

    Raster raster;
    raster.window = window;
    raster.nx = nx;
    raster.ny = ny;
    raster.params = params;
    raster.spec = spec;
    raster.labels.assign(std::size_t(nx) * ny, RegionLabel::Outside);

    parallel_for(std::size_t(ny), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t row = lo; row < hi; ++row) {
            for (int col = 0; col < nx; ++col) {
                complexd z = raster.point(int(row), col);
                RegionLabel label = RegionLabel::Outside;
                if (in_E_eps_delta(z, params, spec))
                    label = RegionLabel::Constrained;
                else if (in_E(z, params))
                    label = RegionLabel::InteriorE;
                raster.labels[row * nx + col] = label;
            }
        }
    });
    return raster;
}

}  // namespace ousect
