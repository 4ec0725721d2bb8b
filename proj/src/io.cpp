// SPDX-License-Identifier: Apache-2.0
#include "ousect/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

#include "ousect/errors.hpp"

namespace ousect {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_complex(complexd v) {
    std::string out = format_double(v.real());
    double im = v.imag();
    if (std::signbit(im) && !std::isnan(im)) {
        out += '-';
        out += format_double(-im);
    } else {
        out += '+';
        out += format_double(im);
    }
    out += 'i';
    return out;
}

namespace {

[[noreturn]] void bad_complex(std::string_view text) {
    fail("invalid-argument",
         "cannot parse '" + std::string(text) + "' as re+imi");
}

// Parses a double at [cur, end); also accepts a bare "i" coefficient of 1.
// Returns the new cursor or nullptr on failure.
const char* parse_part(const char* cur, const char* end, bool negative,
                       double& out) {
    if (cur == end) return nullptr;
    double mag = 0.0;
    auto res = std::from_chars(cur, end, mag);
    if (res.ec != std::errc{}) {
        if (*cur == 'i') {  // bare i: coefficient 1
            out = negative ? -1.0 : 1.0;
            return cur;
        }
        return nullptr;
    }
    out = negative ? -mag : mag;
    return res.ptr;
}

}  // namespace

complexd parse_complex(std::string_view text) {
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    if (b == std::string_view::npos) bad_complex(text);
    std::string_view s = text.substr(b, e - b + 1);

    const char* cur = s.data();
    const char* end = s.data() + s.size();
    bool neg = false;
    if (*cur == '+' || *cur == '-') {
        neg = *cur == '-';
        ++cur;
    }
    double first = 0.0;
    cur = parse_part(cur, end, neg, first);
    if (cur == nullptr) bad_complex(text);
    if (cur == end) return {first, 0.0};
    if (*cur == 'i') {
        if (cur + 1 != end) bad_complex(text);
        return {0.0, first};
    }

    if (*cur != '+' && *cur != '-') bad_complex(text);
    neg = *cur == '-';
    ++cur;
    double second = 0.0;
    cur = parse_part(cur, end, neg, second);
    if (cur == nullptr || cur == end || *cur != 'i' || cur + 1 != end)
        bad_complex(text);
    return {first, second};
}

void to_json(json& j, const CalculusParams& v) {
    j = json{{"p", v.p}, {"d", v.d}, {"m_p", v.m_p}, {"theta_p", v.theta_p}};
}

void to_json(json& j, const DomainSpec& v) {
    j = json{{"epsilon", v.epsilon}, {"delta", v.delta}};
}

void to_json(json& j, const GridSpec& v) {
    j = json{{"radius", v.radius}, {"step", v.step}, {"dim", v.dim}};
}

void to_json(json& j, const Window& v) {
    j = json{{"re_min", v.re_min},
             {"re_max", v.re_max},
             {"im_min", v.im_min},
             {"im_max", v.im_max}};
}

void to_json(json& j, const ContainmentReport& v) {
    j = json{{"params", v.params},
             {"eps_prime", v.eps_prime},
             {"radius_cap", v.radius_cap},
             {"samples", v.samples},
             {"epsilon", v.spec.epsilon},
             {"delta", v.spec.delta},
             {"worst_cos2_margin", v.worst_cos2_margin},
             {"min_pole_distance", v.min_pole_distance},
             {"worst_z", v.worst_z}};
}

void to_json(json& j, const DominationReport& v) {
    j = json{{"z", v.z},
             {"p", v.params.p},
             {"d", v.params.d},
             {"min_margin", v.min_margin},
             {"argmin", json{{"x", v.argmin_x}, {"y", v.argmin_y}}},
             {"grid", v.grid},
             {"samples", v.samples}};
}

void to_json(json& j, const SupBoundSample& v) {
    j = json{{"z", v.z},
             {"g_l1", v.g_l1},
             {"chain_rhs", v.chain_rhs},
             {"one_plus_w_abs", v.one_plus_w_abs}};
}

void to_json(json& j, const SupBoundReport& v) {
    j = json{{"p", v.params.p},
             {"d", v.params.d},
             {"epsilon", v.spec.epsilon},
             {"delta", v.spec.delta},
             {"samples", v.samples},
             {"chain_holds", v.chain_holds},
             {"sup_g_l1", v.sup_g_l1},
             {"sup_chain_rhs", v.sup_chain_rhs},
             {"min_one_plus_w", v.min_one_plus_w},
             {"worst_slack", v.worst_slack},
             {"worst", v.worst}};
}

void to_json(json& j, const NormEstimate& v) {
    j = json{{"lower", v.lower},
             {"upper", v.upper},
             {"method", v.method},
             {"seed", v.seed},
             {"grid", v.grid},
             {"params", v.params},
             {"z", v.z},
             {"iterations", v.iterations},
             {"witness", v.witness}};
}

void to_json(json& j, const BlowupSide& v) {
    j = json{{"arg_s", v.arg_s},
             {"z", v.zs},
             {"margins", v.margins},
             {"young", v.young},
             {"max_ratio", v.max_ratio},
             {"best_a", v.best_a},
             {"best_z", v.best_z},
             {"valid", v.valid},
             {"invalid", v.invalid}};
}

void to_json(json& j, const BlowupReport& v) {
    j = json{{"params", v.params},
             {"applicable", v.applicable},
             {"critical_arg", v.critical_arg},
             {"target_arg_s", v.target_arg_s},
             {"contrast_arg_s", v.contrast_arg_s},
             {"contrast", v.contrast},
             {"contrast_young_max", v.contrast_young_max},
             {"exceed_factor", v.exceed_factor}};
    if (v.applicable) j["outside"] = v.outside;
}

void to_json(json& j, const HermiteExpansion& v) {
    json entries = json::array();
    for (std::size_t k = 0; k < v.indices.size(); ++k) {
        json alpha = json::array();
        for (int a = 0; a < v.d; ++a) alpha.push_back(v.indices[k][std::size_t(a)]);
        entries.push_back(json::array({alpha, v.coefficients[k].real(),
                                       v.coefficients[k].imag()}));
    }
    j = json{{"d", v.d}, {"N", v.max_degree}, {"entries", entries}};
}

void write_raster_csv(std::ostream& out, const Raster& raster) {
    out << "re,im,label\n";
    for (int row = 0; row < raster.ny; ++row)
        for (int col = 0; col < raster.nx; ++col) {
            complexd z = raster.point(row, col);
            out << format_double(z.real()) << ',' << format_double(z.imag())
                << ','
                << int(raster.labels[std::size_t(row) * std::size_t(raster.nx) +
                                     std::size_t(col)])
                << '\n';
        }
}

json raster_sidecar(const Raster& raster) {
    return json{{"params", raster.params},
                {"domain", raster.spec},
                {"window", raster.window},
                {"resolution", json{{"nx", raster.nx}, {"ny", raster.ny}}}};
}

void write_grid_function_csv(std::ostream& out, const GridFunction& f) {
    const int d = f.spec.dim;
    for (int a = 0; a < d; ++a) out << 'x' << (a + 1) << ',';
    out << "re,im\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        auto x = f.spec.node(i);
        for (int a = 0; a < d; ++a)
            out << format_double(x[std::size_t(a)]) << ',';
        out << format_double(f.values[i].real()) << ','
            << format_double(f.values[i].imag()) << '\n';
    }
}

json grid_sidecar(const GridSpec& spec) { return json{{"grid", spec}}; }

}  // namespace ousect
