// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "ousect/domination.hpp"
#include "ousect/errors.hpp"
#include "ousect/sector.hpp"

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

}  // namespace

TEST_CASE("quadratic-form margin") {
    CalculusParams p2 = compute_params(2.0, 1);
    CalculusParams p4 = compute_params(4.0, 1);

    SUBCASE("real time at p = 2 gives coth(t/2)") {
        for (double t : {0.1, 0.5, 1.0, 3.0}) {
            double want = 1.0 / std::tanh(t / 2.0);
            CHECK(margin({t, 0.0}, p2) ==
                  doctest::Approx(want).epsilon(1e-14));
        }
    }
    SUBCASE("sign flips across the critical angle") {
        double crit = p4.critical_arg();
        complexd zin = z_from_s(std::polar(0.3, crit - 1e-3));
        complexd zout = z_from_s(std::polar(0.3, crit + 1e-3));
        CHECK(margin(zin, p4) > 0.0);
        CHECK(margin(zout, p4) < 0.0);
    }
    SUBCASE("invariant under conjugation") {
        for (complexd z : {complexd{0.7, 1.2}, complexd{2.0, -0.4}}) {
            double a = margin(z, p4);
            double b = margin(std::conj(z), p4);
            CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
        }
    }
    SUBCASE("purely imaginary time is degenerate") {
        CHECK(fails_with("degenerate-input",
                         [&] { margin({0.0, 1.0}, p2); }));
    }
}

TEST_CASE("dominating Gaussian pointwise") {
    CalculusParams p4 = compute_params(4.0, 1);
    complexd z{0.8, 0.5};

    SUBCASE("peak value and radial decay") {
        double x0[1] = {0.0}, x1[1] = {1.0}, x2[1] = {2.5};
        double v = std::abs(1.0 - std::exp(-2.0 * z));
        double want0 = std::pow(2.0 * std::numbers::pi * v, -0.5);
        CHECK(g_value(z, x0, p4) == doctest::Approx(want0).epsilon(1e-14));
        CHECK(g_value(z, x0, p4) > g_value(z, x1, p4));
        CHECK(g_value(z, x1, p4) > g_value(z, x2, p4));
    }
    SUBCASE("two dimensions factor into a product") {
        CalculusParams p4d2 = compute_params(4.0, 2);
        double a[1] = {0.7}, b[1] = {-1.4}, ab[2] = {0.7, -1.4};
        double lhs = g_value(z, ab, p4d2);
        double rhs = g_value(z, a, p4) * g_value(z, b, p4);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("integral of the dominating Gaussian") {
    SUBCASE("real time at p = 2 collapses to (2 / (1 + e^{-t}))^d") {
        for (int d : {1, 2, 3}) {
            CalculusParams params = compute_params(2.0, d);
            for (double t : {0.1, 0.7, 2.0, 9.0}) {
                double want = std::pow(2.0 / (1.0 + std::exp(-t)), d);
                CHECK(std::abs(g_l1_closed_form({t, 0.0}, params) - want) <=
                      1e-12 * want);
            }
        }
    }
    SUBCASE("closed form matches quadrature over sampled admissible times") {
        for (double p : {4.0 / 3.0, 2.0, 4.0}) {
            CalculusParams params = compute_params(p, 1);
            for (complexd z : sample_E(params, 30)) {
                double closed = g_l1_closed_form(z, params);
                double quad = g_l1_quadrature(z, params);
                CHECK(std::abs(closed - quad) <=
                      1e-8 * std::max(1.0, closed));
            }
        }
    }
    SUBCASE("non-positive margin has no finite integral") {
        CalculusParams p4 = compute_params(4.0, 1);
        complexd zbad = z_from_s(std::polar(0.3, p4.critical_arg() + 0.05));
        CHECK(margin(zbad, p4) < 0.0);
        CHECK(fails_with("divergent-integral",
                         [&] { g_l1_closed_form(zbad, p4); }));
    }
}

TEST_CASE("pointwise domination scan") {
    CalculusParams p4 = compute_params(4.0, 1);
    GridSpec spec = GridSpec::make(5.0, 0.05, 1);

    SUBCASE("real time") {
        DominationReport r = check_domination({1.0, 0.0}, p4, spec);
        CHECK(r.min_margin >= -1e-12);
        CHECK(r.samples == std::size_t(201) * 201);
        CHECK(r.argmin_x.size() == 1);
        CHECK(r.argmin_y.size() == 1);
    }
    SUBCASE("near the critical angle the bound still holds") {
        complexd z = z_from_s(std::polar(0.3, p4.critical_arg() - 1e-3));
        DominationReport r = check_domination(z, p4, spec);
        CHECK(r.min_margin >= -1e-12);
    }
    SUBCASE("outside the admissible set the bound is not claimed") {
        complexd z = z_from_s(std::polar(0.3, p4.critical_arg() + 0.01));
        CHECK(fails_with("domain", [&] { check_domination(z, p4, spec); }));
    }
}

TEST_CASE("deterministic sampling of the admissible regions") {
    CalculusParams p43 = compute_params(4.0 / 3.0, 1);
    DomainSpec spec{0.05, 0.3};

    SUBCASE("constrained samples satisfy every constraint") {
        auto zs = sample_constrained_region(p43, spec, 100);
        REQUIRE(zs.size() == 100);
        for (complexd z : zs) {
            CHECK(in_E_eps_delta(z, p43, spec));
            CHECK(margin(z, p43) > 0.0);
        }
    }
    SUBCASE("repeat calls give identical points") {
        auto a = sample_constrained_region(p43, spec, 25);
        auto b = sample_constrained_region(p43, spec, 25);
        CHECK(a == b);
    }
    SUBCASE("plain admissible samples are admissible") {
        auto zs = sample_E(p43, 64);
        REQUIRE(zs.size() == 64);
        for (complexd z : zs) CHECK(in_E(z, p43));
    }
    SUBCASE("an unreachable specification reports a sampling failure") {
        // delta = 3.9 empties the imaginary band (the sampler falls back
        // to the real axis), and on the real axis the pole distance is
        // hypot(re, pi) <= hypot(2, pi) ~ 3.73 < 3.9, so no candidate can
        // ever satisfy the clearance constraint.
        CHECK(fails_with("sampling", [&] {
            sample_constrained_region(p43, DomainSpec{0.05, 3.9}, 10,
                                      /*re_max=*/2.0);
        }));
    }
}

TEST_CASE("closing chain over the constrained region") {
    for (double p : {2.0, 4.0}) {
        CalculusParams params = compute_params(p, 1);
        SupBoundReport r =
            sup_integral_bound(params, DomainSpec{0.05, 0.3}, 200);
        CHECK(r.samples == 200);
        CHECK(r.chain_holds);
        CHECK(r.worst_slack >= 0.0);
        CHECK(r.min_one_plus_w > 0.0);
        CHECK(r.sup_g_l1 <= r.sup_chain_rhs + 1e-12);
        CHECK(r.worst.chain_rhs - r.worst.g_l1 ==
              doctest::Approx(r.worst_slack).epsilon(1e-12));
    }
}

TEST_CASE("bisection locates the critical angle") {
    SUBCASE("p = 4 and its conjugate see the same angle") {
        for (double p : {4.0, 4.0 / 3.0}) {
            CalculusParams params = compute_params(p, 1);
            double found = margin_sign_change_angle(params, 0.3, 1e-8);
            CHECK(std::abs(found - params.critical_arg()) <= 2e-8);
        }
    }
    SUBCASE("the modulus does not matter") {
        CalculusParams p4 = compute_params(4.0, 1);
        double a = margin_sign_change_angle(p4, 0.15, 1e-9);
        double b = margin_sign_change_angle(p4, 0.85, 1e-9);
        CHECK(std::abs(a - b) <= 4e-9);
    }
    SUBCASE("p = 2 is out of range") {
        CalculusParams p2 = compute_params(2.0, 1);
        CHECK(fails_with("invalid-argument",
                         [&] { margin_sign_change_angle(p2, 0.3, 1e-8); }));
    }
}
