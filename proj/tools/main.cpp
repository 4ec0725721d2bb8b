// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ousect/defaults.hpp"
#include "ousect/domination.hpp"
#include "ousect/errors.hpp"
#include "ousect/hermite.hpp"
#include "ousect/io.hpp"
#include "ousect/kernel.hpp"
#include "ousect/opnorm.hpp"
#include "ousect/rng.hpp"
#include "ousect/sector.hpp"

namespace {

using namespace ousect;

struct CommonOpts {
    std::string out;
    std::string format = "json";
    unsigned long long seed = Defaults::seed;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out,
                    "Output file (default stdout, or $OUSECT_OUT_DIR/<command>)");
    cmd->add_option("--format", c.format, "Report serialization")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", c.seed, "Seed for sampled routines");
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail("invalid-argument", "cannot parse '" + item + "' as a real");
        }
    }
    if (out.empty()) fail("invalid-argument", "empty number list");
    return out;
}

std::optional<std::filesystem::path> resolve_out(const CommonOpts& c,
                                                 const std::string& cmd) {
    if (!c.out.empty()) return std::filesystem::path(c.out);
    if (const char* dir = std::getenv("OUSECT_OUT_DIR"); dir != nullptr && *dir)
        return std::filesystem::path(dir) /
               (cmd + (c.format == "csv" ? ".csv" : ".json"));
    return std::nullopt;
}

void write_text(const std::optional<std::filesystem::path>& path,
                const std::string& text) {
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream f(*path);
    if (!f) fail("invalid-argument", "cannot open output path " + path->string());
    f << text;
}

int emit_json(const CommonOpts& c, const std::string& cmd, json report,
              bool pass) {
    if (c.format != "json")
        fail("invalid-argument", cmd + " reports serialize to JSON only");
    report["command"] = cmd;
    report["pass"] = pass;
    write_text(resolve_out(c, cmd), report.dump(2) + "\n");
    return pass ? 0 : 2;
}

void dump_grid_function(const std::string& path, const GridFunction& f) {
    std::ofstream csv(path);
    if (!csv) fail("invalid-argument", "cannot open output path " + path);
    write_grid_function_csv(csv, f);
    std::ofstream meta(path + ".meta.json");
    if (!meta) fail("invalid-argument", "cannot open sidecar for " + path);
    meta << grid_sidecar(f.spec).dump(2) << "\n";
}

// ---------------------------------------------------------------- commands

struct KernelIdentityOpts {
    CommonOpts common;
    int d = 1;
    int samples = 10000;
    double re_min = 0.05, re_max = 5.0;
    double tolerance = Defaults::tol_kernel_identity;
};

int run_kernel_identity(const KernelIdentityOpts& o) {
    CalculusParams params = compute_params(2.0, o.d);
    SplitMix64 rng(o.common.seed);
    double worst = 0.0;
    complexd worst_z;
    std::vector<double> x(static_cast<std::size_t>(o.d)), y(static_cast<std::size_t>(o.d));
    std::vector<double> worst_x = x, worst_y = y;
    for (int i = 0; i < o.samples; ++i) {
        complexd z{rng.uniform(o.re_min, o.re_max), rng.uniform(-M_PI, M_PI)};
        for (auto& e : x) e = rng.uniform(-3.0, 3.0);
        for (auto& e : y) e = rng.uniform(-3.0, 3.0);
        complexd m1 = mehler({z, x, y, params});
        complexd m2 = mehler_alt({z, x, y, params});
        double den = std::max(std::abs(m1), std::abs(m2));
        double rel = den == 0.0 ? 0.0 : std::abs(m1 - m2) / den;
        if (rel > worst) {
            worst = rel;
            worst_z = z;
            worst_x = x;
            worst_y = y;
        }
    }
    bool pass = worst <= o.tolerance;
    if (!pass)
        std::cerr << "kernel identity breach: max relative error "
                  << format_double(worst) << " > "
                  << format_double(o.tolerance) << " at z="
                  << format_complex(worst_z) << "\n";
    json report{{"d", o.d},
                {"samples", o.samples},
                {"re_range", json::array({o.re_min, o.re_max})},
                {"max_rel_error", worst},
                {"tolerance", o.tolerance},
                {"worst", json{{"z", worst_z}, {"x", worst_x}, {"y", worst_y}}},
                {"seed", o.common.seed}};
    return emit_json(o.common, "verify-kernel-identity", report, pass);
}

struct SemigroupOpts {
    CommonOpts common;
    double t = 0.3, s = 0.7;
    int max_degree = 4;
    double radius = 10.0, step = 0.05;
    double tolerance = Defaults::tol_semigroup;
    std::string dump_grid;
};

int run_semigroup(const SemigroupOpts& o) {
    CalculusParams params = compute_params(2.0, 1);
    GridSpec spec = GridSpec::make(o.radius, o.step, 1);
    const double interior = 0.5 * o.radius;

    auto sup_interior = [&](const GridFunction& a, const GridFunction& b) {
        double sup = 0.0;
        for (int i = 0; i < spec.axis_nodes(); ++i)
            if (std::abs(spec.coord(i)) <= interior)
                sup = std::max(sup,
                               std::abs(a.values[std::size_t(i)] -
                                        b.values[std::size_t(i)]));
        return sup;
    };

    GridFunction one = GridFunction::sample(
        spec, [](std::span<const double>) { return complexd{1.0, 0.0}; });
    GridFunction t_one =
        apply_semigroup_quadrature({o.t, 0.0}, one, Measure::Mu, params);
    double conservativity = sup_interior(t_one, one);

    json degrees = json::array();
    double max_defect = 0.0;
    GridFunction last;
    for (int n = 0; n <= o.max_degree; ++n) {
        GridFunction f = GridFunction::sample(
            spec, [n](std::span<const double> xx) {
                return complexd{hermite_value(n, xx[0]), 0.0};
            });
        GridFunction two_step = apply_semigroup_quadrature(
            {o.t, 0.0},
            apply_semigroup_quadrature({o.s, 0.0}, f, Measure::Mu, params),
            Measure::Mu, params);
        GridFunction one_step = apply_semigroup_quadrature(
            {o.t + o.s, 0.0}, f, Measure::Mu, params);
        double defect = sup_interior(two_step, one_step);
        max_defect = std::max(max_defect, defect);
        degrees.push_back(json{{"degree", n}, {"defect", defect}});
        last = std::move(one_step);
    }
    if (!o.dump_grid.empty()) dump_grid_function(o.dump_grid, last);

    bool pass = max_defect <= o.tolerance &&
                conservativity <= Defaults::tol_conservativity;
    if (!pass)
        std::cerr << "semigroup defect " << format_double(max_defect)
                  << " (tolerance " << format_double(o.tolerance)
                  << "), conservativity " << format_double(conservativity)
                  << " (tolerance "
                  << format_double(Defaults::tol_conservativity) << ")\n";
    json report{{"t", o.t},
                {"s", o.s},
                {"grid", spec},
                {"interior_radius", interior},
                {"conservativity_defect", conservativity},
                {"conservativity_tolerance", Defaults::tol_conservativity},
                {"max_law_defect", max_defect},
                {"tolerance", o.tolerance},
                {"degrees", degrees}};
    return emit_json(o.common, "verify-semigroup", report, pass);
}

struct SpectralOpts {
    CommonOpts common;
    std::string z = "1+0i";
    int max_degree = 8;
    int quad_order = 0;
    double radius = 10.0, step = 0.05;
    double tolerance = Defaults::tol_spectral;
    std::string dump_grid;
};

int run_spectral(const SpectralOpts& o) {
    complexd z = parse_complex(o.z);
    CalculusParams params = compute_params(2.0, 1);
    GridSpec spec = GridSpec::make(o.radius, o.step, 1);
    const double interior = 0.5 * o.radius;

    double worst_eigen = 0.0;
    for (int n = 0; n <= o.max_degree; ++n) {
        GridFunction f = GridFunction::sample(
            spec, [n](std::span<const double> xx) {
                return complexd{hermite_value(n, xx[0]), 0.0};
            });
        GridFunction qf =
            apply_semigroup_quadrature(z, f, Measure::Mu, params);
        complexd mult = std::exp(-double(n) * z);
        for (int i = 0; i < spec.axis_nodes(); ++i)
            if (std::abs(spec.coord(i)) <= interior)
                worst_eigen = std::max(
                    worst_eigen, std::abs(qf.values[std::size_t(i)] -
                                          mult * f.values[std::size_t(i)]));
    }

    // Mixed function with every degree present: both routes must agree.
    const int N = o.max_degree;
    auto mixed = [N](std::span<const double> xx) {
        std::vector<double> h(std::size_t(N) + 1);
        hermite_values(xx[0], h);
        double acc = 0.0;
        for (int n = 0; n <= N; ++n) acc += h[std::size_t(n)] / (n + 1.0);
        return complexd{acc, 0.0};
    };
    HermiteExpansion e = expand_mu(mixed, N, params, o.quad_order);
    GridFunction spectral = synthesize(apply_semigroup_spectral(z, e), spec);
    GridFunction quad = apply_semigroup_quadrature(
        z, GridFunction::sample(spec, mixed), Measure::Mu, params);
    double worst_mixed = 0.0;
    for (int i = 0; i < spec.axis_nodes(); ++i)
        if (std::abs(spec.coord(i)) <= interior)
            worst_mixed = std::max(
                worst_mixed, std::abs(spectral.values[std::size_t(i)] -
                                      quad.values[std::size_t(i)]));
    if (!o.dump_grid.empty()) dump_grid_function(o.dump_grid, quad);

    bool pass = worst_eigen <= o.tolerance && worst_mixed <= o.tolerance;
    if (!pass)
        std::cerr << "spectral route deviation: eigenfunction "
                  << format_double(worst_eigen) << ", mixed "
                  << format_double(worst_mixed) << " exceeds "
                  << format_double(o.tolerance) << "\n";
    json report{{"z", z},
                {"max_degree", o.max_degree},
                {"grid", spec},
                {"interior_radius", interior},
                {"eigenfunction_defect", worst_eigen},
                {"mixed_defect", worst_mixed},
                {"tolerance", o.tolerance}};
    return emit_json(o.common, "verify-spectral", report, pass);
}

struct DominationOpts {
    CommonOpts common;
    double p = 2.0;
    int d = 1;
    std::string z = "1+0i";
    double radius = 0.0, step = 0.0;  // 0 = pick per dimension
    double floor = -Defaults::domination_floor;
};

int run_domination(const DominationOpts& o) {
    CalculusParams params = compute_params(o.p, o.d);
    GridSpec spec = o.radius > 0.0 && o.step > 0.0
                        ? GridSpec::make(o.radius, o.step, o.d)
                        : (o.d == 1 ? GridSpec::make(5.0, 0.05, 1)
                                    : Defaults::grid_for(o.d));
    DominationReport rep = check_domination(parse_complex(o.z), params, spec);
    bool pass = rep.min_margin >= -o.floor;
    if (!pass)
        std::cerr << "domination breach: min margin "
                  << format_double(rep.min_margin) << " < -"
                  << format_double(o.floor) << "\n";
    json report = rep;
    report["floor"] = o.floor;
    return emit_json(o.common, "domination", report, pass);
}

struct DomainMapOpts {
    CommonOpts common;
    double p = 2.0;
    double epsilon = Defaults::domain_spec().epsilon;
    double delta = Defaults::domain_spec().delta;
    std::string window = "0.05,4,-3.2,3.2";
    int res = 200;
};

int run_domain_map(const DomainMapOpts& o) {
    CalculusParams params = compute_params(o.p, 1);
    DomainSpec spec{o.epsilon, o.delta};
    auto values = parse_double_list(o.window);
    if (values.size() != 4)
        fail("invalid-argument", "--window needs re_min,re_max,im_min,im_max");
    Window window{values[0], values[1], values[2], values[3]};
    if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max))
        fail("invalid-argument", "window bounds must be increasing");
    Raster raster = domain_map_raster(params, spec, window, o.res, o.res);

    if (o.common.format == "csv") {
        auto path = resolve_out(o.common, "domain-map");
        std::ostringstream csv;
        write_raster_csv(csv, raster);
        write_text(path, csv.str());
        if (path) {
            std::ofstream meta(path->string() + ".meta.json");
            if (!meta)
                fail("invalid-argument", "cannot open sidecar for " +
                                             path->string());
            meta << raster_sidecar(raster).dump(2) << "\n";
        }
        return 0;
    }
    json report = raster_sidecar(raster);
    std::vector<int> labels(raster.labels.size());
    std::transform(raster.labels.begin(), raster.labels.end(), labels.begin(),
                   [](RegionLabel l) { return int(l); });
    report["labels"] = labels;
    return emit_json(o.common, "domain-map", report, true);
}

struct NormScanOpts {
    CommonOpts common;
    double p = 2.0;
    int d = 1;
    std::string t_list;
    std::string z;
    double radius = 0.0, step = 0.0;  // 0 = Defaults::norm_grid_for(d)
    double tolerance = -1.0;          // <0 = per-mode default
};

int run_norm_scan(const NormScanOpts& o) {
    if (o.t_list.empty() == o.z.empty())
        fail("invalid-argument", "pass exactly one of --t and --z");
    CalculusParams params = compute_params(o.p, o.d);
    GridSpec spec = o.radius > 0.0 && o.step > 0.0
                        ? GridSpec::make(o.radius, o.step, o.d)
                        : Defaults::norm_grid_for(o.d);
    PowerIterOptions popt;
    popt.seed = o.common.seed;

    if (!o.t_list.empty()) {
        double slack =
            o.tolerance >= 0.0 ? o.tolerance : Defaults::contraction_slack;
        json runs = json::array();
        bool pass = true;
        for (double t : parse_double_list(o.t_list)) {
            NormEstimate est = contraction_check(t, params, spec, popt);
            bool ok = est.upper <= 1.0 + slack;
            pass = pass && ok;
            if (!ok)
                std::cerr << "contraction breach at t=" << format_double(t)
                          << ": upper " << format_double(est.upper) << " > 1+"
                          << format_double(slack) << "\n";
            json r = est;
            r["contractive"] = ok;
            runs.push_back(std::move(r));
        }
        json report{{"mode", "contraction"},
                    {"params", params},
                    {"grid", spec},
                    {"slack", slack},
                    {"runs", runs}};
        return emit_json(o.common, "norm-scan", report, pass);
    }

    double slack = o.tolerance >= 0.0 ? o.tolerance : Defaults::young_slack;
    complexd z = parse_complex(o.z);
    NormEstimate est = complex_norm_estimate(z, params, spec, popt);
    double young = g_l1_closed_form(z, params);
    bool pass = est.upper <= young + slack;
    if (!pass)
        std::cerr << "norm upper " << format_double(est.upper)
                  << " exceeds convolution bound " << format_double(young)
                  << " + " << format_double(slack) << "\n";
    json report{{"mode", "complex"},
                {"params", params},
                {"grid", spec},
                {"slack", slack},
                {"young_bound", young},
                {"estimate", est}};
    return emit_json(o.common, "norm-scan", report, pass);
}

struct SupBoundOpts {
    CommonOpts common;
    double p = 2.0;
    int d = 1;
    double epsilon = Defaults::domain_spec().epsilon;
    double delta = Defaults::domain_spec().delta;
    int samples = 1000;
};

int run_sup_bound(const SupBoundOpts& o) {
    CalculusParams params = compute_params(o.p, o.d);
    DomainSpec spec{o.epsilon, o.delta};
    SupBoundReport rep =
        sup_integral_bound(params, spec, std::size_t(o.samples));
    if (!rep.chain_holds)
        std::cerr << "sup chain breach at z=" << format_complex(rep.worst.z)
                  << ": g_l1 " << format_double(rep.worst.g_l1) << " > "
                  << format_double(rep.worst.chain_rhs) << "\n";
    return emit_json(o.common, "sup-bound", rep, rep.chain_holds);
}

struct ContainmentOpts {
    CommonOpts common;
    double p = 2.0;
    double eps_prime = M_PI / 36.0;
    int samples = 10000;
    double radius_cap = 10.0;
};

int run_containment(const ContainmentOpts& o) {
    CalculusParams params = compute_params(o.p, 1);
    ContainmentReport rep = verify_sector_containment(
        params, o.eps_prime, std::size_t(o.samples), o.radius_cap);
    return emit_json(o.common, "containment", rep, true);
}

struct BlowupOpts {
    CommonOpts common;
    double p = 4.0;
    int d = 1;
    double target_deg = 75.0;
    std::string s_moduli;
    int a_grid = 0;
    int rounds = 0;
    double a_window = 0.0;
    double shrink = 0.0;
    double contrast_frac = 0.0;
};

int run_blowup(const BlowupOpts& o) {
    CalculusParams params = compute_params(o.p, o.d);
    BlowupOptions bo;
    if (!o.s_moduli.empty()) bo.s_moduli = parse_double_list(o.s_moduli);
    if (o.a_grid > 0) bo.a_grid = o.a_grid;
    if (o.rounds > 0) bo.rounds = o.rounds;
    if (o.a_window > 0.0) bo.a_window = o.a_window;
    if (o.shrink > 0.0) bo.shrink = o.shrink;
    if (o.contrast_frac > 0.0) bo.contrast_frac = o.contrast_frac;
    BlowupReport rep =
        blowup_scan(params, o.target_deg * M_PI / 180.0, bo);

    std::string status;
    bool pass = true;
    if (!rep.applicable) {
        status = "not-applicable";
    } else {
        bool all_negative = true;
        for (double m : rep.outside.margins) all_negative &= m < 0.0;
        if (!all_negative) {
            status = "margin-not-negative";
            pass = false;
            std::cerr << "expected negative margin beyond the critical angle\n";
        } else if (rep.exceed_factor >= Defaults::blowup_exceed_factor) {
            status = "decisive";
        } else {
            status = "inconclusive";
        }
    }
    json report = rep;
    report["status"] = status;
    report["exceed_threshold"] = Defaults::blowup_exceed_factor;
    return emit_json(o.common, "blowup-probe", report, pass);
}

json defaults_table() {
    return json{
        {"tolerances",
         json{{"kernel_identity", Defaults::tol_kernel_identity},
              {"conservativity", Defaults::tol_conservativity},
              {"semigroup", Defaults::tol_semigroup},
              {"spectral", Defaults::tol_spectral},
              {"contraction_slack", Defaults::contraction_slack},
              {"domination_floor", Defaults::domination_floor},
              {"g_l1", Defaults::tol_g_l1},
              {"p2_simplification", Defaults::tol_p2_simplification},
              {"young_slack", Defaults::young_slack},
              {"blowup_exceed_factor", Defaults::blowup_exceed_factor},
              {"bisect_tol", Defaults::bisect_tol}}},
        {"domain", Defaults::domain_spec()},
        {"grids", json{{"apply",
                        json{{"d1", Defaults::grid_for(1)},
                             {"d2", Defaults::grid_for(2)},
                             {"d3", Defaults::grid_for(3)}}},
                       {"norm",
                        json{{"d1", Defaults::norm_grid_for(1)},
                             {"d2", Defaults::norm_grid_for(2)},
                             {"d3", Defaults::norm_grid_for(3)}}}}},
        {"seed", Defaults::seed}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mehler-kernel Ornstein-Uhlenbeck semigroup verifier"};
    app.require_subcommand(0, 1);
    bool show_defaults = false;
    app.add_flag("--show-defaults", show_defaults,
                 "Print the default tolerance and grid table, then exit");

    KernelIdentityOpts ki;
    auto* ki_cmd = app.add_subcommand(
        "verify-kernel-identity",
        "Cross-check the two kernel factorizations at random points");
    ki_cmd->add_option("--d", ki.d, "Dimension (1-3)");
    ki_cmd->add_option("--samples", ki.samples, "Random (z, x, y) triples")
        ->check(CLI::PositiveNumber);
    ki_cmd->add_option("--re-min", ki.re_min, "Lower bound for Re z");
    ki_cmd->add_option("--re-max", ki.re_max, "Upper bound for Re z");
    ki_cmd->add_option("--tolerance", ki.tolerance, "Max relative deviation");
    add_common(ki_cmd, ki.common);

    SemigroupOpts sg;
    auto* sg_cmd = app.add_subcommand(
        "verify-semigroup",
        "Check T_t T_s = T_{t+s} and mass conservation by quadrature");
    sg_cmd->add_option("--t", sg.t, "First time");
    sg_cmd->add_option("--s", sg.s, "Second time");
    sg_cmd->add_option("--max-degree", sg.max_degree,
                       "Test functions h_0..h_N");
    sg_cmd->add_option("--grid-radius", sg.radius, "Grid half-width");
    sg_cmd->add_option("--grid-step", sg.step, "Grid spacing");
    sg_cmd->add_option("--tolerance", sg.tolerance, "Max sup-norm defect");
    sg_cmd->add_option("--dump-grid", sg.dump_grid,
                       "Write T_{t+s} h_N as CSV to this path");
    add_common(sg_cmd, sg.common);

    SpectralOpts sp;
    auto* sp_cmd = app.add_subcommand(
        "verify-spectral",
        "Check quadrature against the e^{-nz} spectral multiplier");
    sp_cmd->add_option("--z", sp.z, "Complex time, re+imi");
    sp_cmd->add_option("--max-degree", sp.max_degree, "Highest degree");
    sp_cmd->add_option("--quad-order", sp.quad_order,
                       "Gauss-Hermite order for expansions (0 = minimal)");
    sp_cmd->add_option("--grid-radius", sp.radius, "Grid half-width");
    sp_cmd->add_option("--grid-step", sp.step, "Grid spacing");
    sp_cmd->add_option("--tolerance", sp.tolerance, "Max deviation");
    sp_cmd->add_option("--dump-grid", sp.dump_grid,
                       "Write the quadrature route output as CSV");
    add_common(sp_cmd, sp.common);

    DominationOpts dom;
    auto* dom_cmd = app.add_subcommand(
        "domination",
        "Scan the pointwise Gaussian domination of the conjugated kernel");
    dom_cmd->add_option("--p", dom.p, "Lebesgue exponent");
    dom_cmd->add_option("--d", dom.d, "Dimension (1-3)");
    dom_cmd->add_option("--z", dom.z, "Complex time, re+imi");
    dom_cmd->add_option("--grid-radius", dom.radius, "Grid half-width");
    dom_cmd->add_option("--grid-step", dom.step, "Grid spacing");
    dom_cmd->add_option("--floor", dom.floor,
                        "Allowed rounding dip below zero");
    add_common(dom_cmd, dom.common);

    DomainMapOpts dm;
    dm.common.format = "csv";
    auto* dm_cmd = app.add_subcommand(
        "domain-map", "Rasterize the admissible complex-time region");
    dm_cmd->add_option("--p", dm.p, "Lebesgue exponent");
    dm_cmd->add_option("--epsilon", dm.epsilon, "Constraint margin");
    dm_cmd->add_option("--delta", dm.delta, "Pole clearance");
    dm_cmd->add_option("--window", dm.window,
                       "re_min,re_max,im_min,im_max");
    dm_cmd->add_option("--res", dm.res, "Raster resolution per axis")
        ->check(CLI::Range(2, 4000));
    dm.common.format = "csv";  // rasters are tabular; --format json overrides
    add_common(dm_cmd, dm.common);

    NormScanOpts ns;
    auto* ns_cmd = app.add_subcommand(
        "norm-scan", "Bound the discretized operator norm on L^p");
    ns_cmd->add_option("--p", ns.p, "Lebesgue exponent");
    ns_cmd->add_option("--d", ns.d, "Dimension (1-3)");
    ns_cmd->add_option("--t", ns.t_list,
                       "Real times, comma separated (contraction mode)");
    ns_cmd->add_option("--z", ns.z, "Complex time, re+imi (single estimate)");
    ns_cmd->add_option("--grid-radius", ns.radius, "Grid half-width");
    ns_cmd->add_option("--grid-step", ns.step, "Grid spacing");
    ns_cmd->add_option("--tolerance", ns.tolerance,
                       "Slack over the target bound");
    add_common(ns_cmd, ns.common);

    SupBoundOpts sb;
    auto* sb_cmd = app.add_subcommand(
        "sup-bound",
        "Verify the uniform L^1 chain over the constrained region");
    sb_cmd->add_option("--p", sb.p, "Lebesgue exponent");
    sb_cmd->add_option("--d", sb.d, "Dimension (1-3)");
    sb_cmd->add_option("--epsilon", sb.epsilon, "Constraint margin");
    sb_cmd->add_option("--delta", sb.delta, "Pole clearance");
    sb_cmd->add_option("--samples", sb.samples, "Sample count")
        ->check(CLI::PositiveNumber);
    add_common(sb_cmd, sb.common);

    ContainmentOpts ct;
    auto* ct_cmd = app.add_subcommand(
        "containment",
        "Find a constrained region containing a slightly shrunk sector");
    ct_cmd->add_option("--p", ct.p, "Lebesgue exponent");
    ct_cmd->add_option("--eps-prime", ct.eps_prime, "Sector angle shrink");
    ct_cmd->add_option("--samples", ct.samples, "Sample count")
        ->check(CLI::PositiveNumber);
    ct_cmd->add_option("--radius-cap", ct.radius_cap, "Sector radius cap");
    add_common(ct_cmd, ct.common);

    BlowupOpts bl;
    auto* bl_cmd = app.add_subcommand(
        "blowup-probe",
        "Probe trial-Gaussian norm ratios beyond the critical angle");
    bl_cmd->add_option("--p", bl.p, "Lebesgue exponent");
    bl_cmd->add_option("--d", bl.d, "Dimension (1-3)");
    bl_cmd->add_option("--target-deg", bl.target_deg,
                       "Target arg s in degrees (must exceed critical)");
    bl_cmd->add_option("--s-moduli", bl.s_moduli,
                       "Comma list of |s| values in (0,1)");
    bl_cmd->add_option("--a-grid", bl.a_grid, "Trial grid points per axis");
    bl_cmd->add_option("--rounds", bl.rounds, "Refinement rounds");
    bl_cmd->add_option("--a-window", bl.a_window, "Initial trial half-width");
    bl_cmd->add_option("--shrink", bl.shrink, "Window shrink per round");
    bl_cmd->add_option("--contrast-frac", bl.contrast_frac,
                       "Contrast angle as a fraction of critical");
    add_common(bl_cmd, bl.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (show_defaults) {
        std::cout << defaults_table().dump(2) << "\n";
        return 0;
    }

    try {
        if (ki_cmd->parsed()) return run_kernel_identity(ki);
        if (sg_cmd->parsed()) return run_semigroup(sg);
        if (sp_cmd->parsed()) return run_spectral(sp);
        if (dom_cmd->parsed()) return run_domination(dom);
        if (dm_cmd->parsed()) return run_domain_map(dm);
        if (ns_cmd->parsed()) return run_norm_scan(ns);
        if (sb_cmd->parsed()) return run_sup_bound(sb);
        if (ct_cmd->parsed()) return run_containment(ct);
        if (bl_cmd->parsed()) return run_blowup(bl);
        std::cerr << app.help();
        return 1;
    } catch (const ousect::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return e.code() == "invalid-argument" || e.code() == "invalid-exponent"
                   ? 1
                   : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
