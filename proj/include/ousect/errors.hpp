// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ousect {

// Typed failure carrying a stable machine-readable code. Codes feed the CLI
// exit-status contract: configuration errors ("invalid-argument",
// "invalid-exponent", parse failures) map to exit 1, everything detected
// while verifying ("domain", "resolution", "search-failure", ...) to exit 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Iterative estimate that stopped before reaching its stagnation target.
// The last value is kept so callers can report how far the run got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double last_estimate)
        : Error("convergence", msg), last_estimate(last_estimate) {}

    double last_estimate;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace ousect
