// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <functional>

#include "ousect/domination.hpp"
#include "ousect/errors.hpp"
#include "ousect/kernel.hpp"
#include "ousect/opnorm.hpp"
#include "ousect/rng.hpp"

using namespace ousect;

namespace {

bool fails_with(const char* code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

RealMatrix random_nonneg(std::size_t n, std::uint64_t seed) {
    RealMatrix m;
    m.rows = m.cols = n;
    m.data.resize(n * n);
    SplitMix64 rng{seed};
    for (double& e : m.data) e = rng.uniform01();
    return m;
}

double holder_norm(const std::vector<double>& v, double q) {
    double acc = 0.0;
    for (double e : v) acc += std::pow(std::abs(e), q);
    return std::pow(acc, 1.0 / q);
}

}  // namespace

TEST_CASE("induced p-norm power method") {
    SUBCASE("identity") {
        RealMatrix id;
        id.rows = id.cols = 8;
        id.data.assign(64, 0.0);
        for (std::size_t i = 0; i < 8; ++i) id.at(i, i) = 1.0;
        PNormResult r = p_norm_upper(id, 4.0);
        CHECK(r.norm == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("rank one attains the Holder product") {
        const double p = 4.0, pc = 4.0 / 3.0;
        SplitMix64 rng{11};
        std::vector<double> a(12), b(12);
        for (double& e : a) e = rng.uniform01() + 0.1;
        for (double& e : b) e = rng.uniform01() + 0.1;
        RealMatrix m;
        m.rows = m.cols = 12;
        m.data.resize(144);
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j) m.at(i, j) = a[i] * b[j];
        double want = holder_norm(a, p) * holder_norm(b, pc);
        PNormResult r = p_norm_upper(m, p);
        CHECK(r.norm == doctest::Approx(want).epsilon(1e-10));
    }
    SUBCASE("p = 2 agrees with a singular value decomposition") {
        RealMatrix m = random_nonneg(60, 7);
        Eigen::MatrixXd em(60, 60);
        for (Eigen::Index i = 0; i < 60; ++i)
            for (Eigen::Index j = 0; j < 60; ++j)
                em(i, j) = m.at(std::size_t(i), std::size_t(j));
        double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(em).singularValues()(0);
        PNormResult r = p_norm_upper(m, 2.0);
        CHECK(r.norm == doctest::Approx(sigma).epsilon(1e-9));
    }
    SUBCASE("the witness realizes the reported value") {
        RealMatrix m = random_nonneg(40, 3);
        const double p = 4.0 / 3.0;
        PNormResult r = p_norm_upper(m, p);
        std::vector<double> y(40, 0.0);
        for (std::size_t i = 0; i < 40; ++i)
            for (std::size_t j = 0; j < 40; ++j)
                y[i] += m.at(i, j) * r.witness[j];
        CHECK(holder_norm(r.witness, p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(holder_norm(y, p) == doctest::Approx(r.norm).epsilon(1e-10));
    }
    SUBCASE("input validation") {
        RealMatrix m = random_nonneg(4, 1);
        CHECK(fails_with("invalid-argument", [&] { p_norm_upper(m, 1.0); }));
        CHECK(fails_with("invalid-argument", [&] { p_norm_upper(m, 0.5); }));
        RealMatrix empty;
        CHECK(fails_with("invalid-argument",
                         [&] { p_norm_upper(empty, 2.0); }));
        m.at(1, 2) = -0.25;
        CHECK(fails_with("invalid-argument", [&] { p_norm_upper(m, 2.0); }));
    }
}

TEST_CASE("discretized kernel matrices") {
    CalculusParams p2 = compute_params(2.0, 1);

    SUBCASE("row sums are conservative at real time") {
        GridSpec spec = GridSpec::make(10.0, 0.05, 1);
        ComplexMatrix k = kernel_matrix({1.0, 0.0}, p2, spec, Measure::Mu);
        double worst = 0.0;
        for (std::size_t i = 0; i < k.rows; ++i) {
            complexd acc{};
            for (std::size_t j = 0; j < k.cols; ++j) acc += k.at(i, j);
            worst = std::max(worst, std::abs(acc - 1.0));
        }
        CHECK(worst <= 1e-8);
    }
    SUBCASE("the conjugated picture is symmetric at p = 2") {
        GridSpec spec = GridSpec::make(6.0, 0.1, 1);
        RealMatrix b = weighted_magnitude_matrix({0.7, 0.4}, p2, spec,
                                                 Measure::Lambda);
        double scale = 0.0, worst = 0.0;
        for (double e : b.data) scale = std::max(scale, e);
        for (std::size_t i = 0; i < b.rows; ++i)
            for (std::size_t j = 0; j < i; ++j)
                worst = std::max(worst, std::abs(b.at(i, j) - b.at(j, i)));
        CHECK(worst <= 1e-14 * scale);
    }
    SUBCASE("two dimensions tensorize") {
        CalculusParams p2d2 = compute_params(2.0, 2);
        GridSpec s1 = GridSpec::make(2.0, 0.5, 1);
        GridSpec s2 = GridSpec::make(2.0, 0.5, 2);
        complexd z{0.6, -0.3};
        ComplexMatrix k1 = kernel_matrix(z, p2, s1, Measure::Mu);
        ComplexMatrix k2 = kernel_matrix(z, p2d2, s2, Measure::Mu);
        std::size_t n = k1.rows;
        for (std::size_t i1 : {std::size_t(0), std::size_t(3), n - 1})
            for (std::size_t i2 : {std::size_t(1), n - 1})
                for (std::size_t j1 : {std::size_t(2), n - 2})
                    for (std::size_t j2 : {std::size_t(0), std::size_t(4)}) {
                        complexd want = k1.at(i1, j1) * k1.at(i2, j2);
                        complexd got = k2.at(i1 * n + i2, j1 * n + j2);
                        CHECK(std::abs(got - want) <=
                              1e-12 * std::max(std::abs(want), 1e-30));
                    }
    }
    SUBCASE("both weighting routes give the same magnitudes") {
        CalculusParams p4 = compute_params(4.0, 1);
        GridSpec spec = GridSpec::make(6.0, 0.1, 1);
        complexd z{0.8, 0.4};
        RealMatrix bmu = weighted_magnitude_matrix(z, p4, spec, Measure::Mu);
        RealMatrix blam =
            weighted_magnitude_matrix(z, p4, spec, Measure::Lambda);
        double scale = 0.0, worst = 0.0;
        for (double e : bmu.data) scale = std::max(scale, e);
        for (std::size_t k = 0; k < bmu.data.size(); ++k)
            worst = std::max(worst, std::abs(bmu.data[k] - blam.data[k]));
        CHECK(worst <= 1e-12 * scale);
    }
    SUBCASE("dense size guard") {
        CalculusParams p2d3 = compute_params(2.0, 3);
        GridSpec spec = GridSpec::make(6.0, 0.1, 3);
        CHECK(fails_with("size", [&] {
            kernel_matrix({1.0, 0.0}, p2d3, spec, Measure::Mu);
        }));
    }
}

TEST_CASE("contraction certificates at real time") {
    GridSpec spec = GridSpec::make(8.0, 0.05, 1);
    for (double p : {4.0 / 3.0, 2.0, 4.0}) {
        CalculusParams params = compute_params(p, 1);
        for (double t : {0.1, 1.0}) {
            NormEstimate est = contraction_check(t, params, spec);
            CHECK(est.upper <= 1.0 + 1e-3);
            CHECK(est.lower > 0.0);
            CHECK(est.lower <= est.upper + 1e-9);
        }
    }
    SUBCASE("guards") {
        CalculusParams p2 = compute_params(2.0, 1);
        CHECK(fails_with("domain", [&] { contraction_check(-1.0, p2, spec); }));
        CHECK(fails_with("resolution",
                         [&] { contraction_check(1e-4, p2, spec); }));
        GridSpec small = GridSpec::make(4.0, 0.05, 1);
        CHECK(fails_with("resolution",
                         [&] { contraction_check(1.0, p2, small); }));
    }
    SUBCASE("upper bound is stable under refinement") {
        CalculusParams p4 = compute_params(4.0, 1);
        double coarse =
            contraction_check(1.0, p4, GridSpec::make(8.0, 0.1, 1)).upper;
        double fine = contraction_check(1.0, p4, spec).upper;
        CHECK(std::abs(coarse - fine) <= 1e-3);
    }
}

TEST_CASE("complex-time norm against the Young bound") {
    CalculusParams p4 = compute_params(4.0, 1);
    GridSpec spec = GridSpec::make(8.0, 0.05, 1);
    auto zs = sample_constrained_region(p4, DomainSpec{0.05, 0.3}, 3);
    for (complexd z : zs) {
        NormEstimate est = complex_norm_estimate(z, p4, spec);
        double young = g_l1_closed_form(z, p4);
        CHECK(est.upper <= young + 1e-4);
        CHECK(est.lower <= est.upper + 1e-9);
        CHECK(est.lower > 0.0);
    }
}

TEST_CASE("Gaussian trial ratio") {
    CalculusParams p4 = compute_params(4.0, 1);

    SUBCASE("zero trial parameter is the constant function") {
        CHECK(trial_ratio_gaussian({0.9, 0.2}, p4, {0.0, 0.0}) ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("real time contracts real trials") {
        for (double a : {0.05, 0.3, 1.0})
            CHECK(trial_ratio_gaussian({0.7, 0.0}, p4, {a, 0.0}) <=
                  1.0 + 1e-12);
    }
    SUBCASE("closed form matches direct quadrature") {
        struct Case {
            complexd z;
            complexd a;
            double p;
        };
        const Case cases[] = {{{0.5, 0.4}, {0.2, 0.0}, 4.0},
                              {{1.0, 0.0}, {0.1, 0.0}, 2.0},
                              {{0.8, -0.3}, {0.05, 0.3}, 4.0}};
        GridSpec spec = GridSpec::make(8.0, 0.05, 1);
        for (const Case& c : cases) {
            CalculusParams params = compute_params(c.p, 1);
            GridFunction f = GridFunction::sample(
                spec, [&](std::span<const double> x) {
                    return std::exp(-c.a * (x[0] * x[0]));
                });
            GridFunction tf =
                apply_semigroup_quadrature(c.z, f, Measure::Mu, params);
            double direct = grid_norm_lp(tf, c.p, Measure::Mu) /
                            grid_norm_lp(f, c.p, Measure::Mu);
            double closed = trial_ratio_gaussian(c.z, params, c.a);
            CHECK(std::abs(direct - closed) <= 1e-6 * closed);
        }
    }
    SUBCASE("divergent trials are flagged, not scored") {
        CHECK(fails_with("trial-invalid", [&] {
            trial_ratio_gaussian({1.0, 0.0}, p4, {-5.0, 0.0});
        }));
    }
}

TEST_CASE("trial-ratio blow-up probe") {
    CalculusParams p4 = compute_params(4.0, 1);
    const double deg = std::atan(1.0) / 45.0;  // pi / 180

    SUBCASE("beyond the critical angle ratios escape the Young bound") {
        BlowupOptions o;
        o.s_moduli = {0.3, 0.5};
        o.a_grid = 9;
        o.rounds = 6;
        BlowupReport r = blowup_scan(p4, 75.0 * deg, o);
        CHECK(r.applicable);
        CHECK(r.outside.valid > 0);
        for (double m : r.outside.margins) CHECK(m < 0.0);
        for (double m : r.contrast.margins) CHECK(m > 0.0);
        CHECK(std::isfinite(r.contrast_young_max));
        CHECK(r.contrast_young_max > 0.0);
        CHECK(r.outside.max_ratio > 0.0);
        CHECK(r.exceed_factor > 0.0);
    }
    SUBCASE("targets inside the sector are rejected") {
        CHECK(fails_with("invalid-argument",
                         [&] { blowup_scan(p4, 30.0 * deg); }));
        CalculusParams p2 = compute_params(2.0, 1);
        CHECK(fails_with("invalid-argument",
                         [&] { blowup_scan(p2, 75.0 * deg); }));
    }
    SUBCASE("a right-angle target is out of reach, not a failure") {
        CalculusParams p2 = compute_params(2.0, 1);
        BlowupOptions o;
        o.s_moduli = {0.3};
        o.a_grid = 5;
        o.rounds = 2;
        BlowupReport r = blowup_scan(p2, 100.0 * deg, o);
        CHECK_FALSE(r.applicable);
        CHECK(r.contrast.valid > 0);
        CHECK(r.exceed_factor == 0.0);
    }
    SUBCASE("option validation") {
        BlowupOptions bad;
        bad.s_moduli = {1.5};
        CHECK(fails_with("invalid-argument",
                         [&] { blowup_scan(p4, 75.0 * deg, bad); }));
        BlowupOptions bad2;
        bad2.rounds = 0;
        CHECK(fails_with("invalid-argument",
                         [&] { blowup_scan(p4, 75.0 * deg, bad2); }));
    }
}
