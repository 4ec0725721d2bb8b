// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ousect/domination.hpp"
#include "ousect/grid.hpp"
#include "ousect/hermite.hpp"
#include "ousect/opnorm.hpp"
#include "ousect/params.hpp"
#include "ousect/sector.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
    static void to_json(json& j, const std::complex<double>& v) {
        j = json{{"re", v.real()}, {"im", v.imag()}};
    }
    static void from_json(const json& j, std::complex<double>& v) {
        v = {j.at("re").get<double>(), j.at("im").get<double>()};
    }
};

}  // namespace nlohmann

namespace ousect {

using nlohmann::json;

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// "re+imi" literal, e.g. "1.5+0.3i", "2-0.5i", "0+1i".
std::string format_complex(complexd v);

// Parses "re", "imi", "re+imi", "re-imi"; "i" alone means coefficient 1.
// Anything else is an "invalid-argument" error.
complexd parse_complex(std::string_view text);

void to_json(json& j, const CalculusParams& v);
void to_json(json& j, const DomainSpec& v);
void to_json(json& j, const GridSpec& v);
void to_json(json& j, const Window& v);
void to_json(json& j, const ContainmentReport& v);
void to_json(json& j, const DominationReport& v);
void to_json(json& j, const SupBoundSample& v);
void to_json(json& j, const SupBoundReport& v);
void to_json(json& j, const NormEstimate& v);
void to_json(json& j, const BlowupSide& v);
void to_json(json& j, const BlowupReport& v);
void to_json(json& j, const HermiteExpansion& v);

// CSV with header re,im,label over the raster points (row-major).
void write_raster_csv(std::ostream& out, const Raster& raster);
// Sidecar metadata for the raster CSV: params, domain spec, window,
// resolution.
json raster_sidecar(const Raster& raster);

// CSV with header x1[,x2[,x3]],re,im over the grid nodes (flat order).
void write_grid_function_csv(std::ostream& out, const GridFunction& f);
// Sidecar metadata for the grid CSV: the generating GridSpec.
json grid_sidecar(const GridSpec& spec);

}  // namespace ousect
