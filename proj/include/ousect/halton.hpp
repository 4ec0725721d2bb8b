// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace ousect {

// Van der Corput radical inverse; halton(i, 2) / halton(i, 3) give a
// deterministic low-discrepancy 2-d point set.  Index 0 maps to 0, so
// callers start at 1 when they need points in the open interval.
inline double halton(std::size_t index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    for (std::size_t i = index; i > 0; i /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
    }
    return r;
}

}  // namespace ousect
