#ifndef TORICRAY_ERRORS_HPP
#define TORICRAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toricray {

// Exit codes: 1 = bad configuration, 2 = numerical failure (tolerance not
// reached), 3 = a mathematically guaranteed invariant was violated.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 1;
};

struct NumericalError : std::runtime_error {
    double achieved = 0.0;
    double requested = 0.0;
    NumericalError(const std::string& msg, double achieved_, double requested_)
        : std::runtime_error(msg + " (achieved " + std::to_string(achieved_) +
                             ", requested " + std::to_string(requested_) + ")"),
          achieved(achieved_), requested(requested_) {}
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
    static constexpr int exit_code = 2;
};

struct InvariantViolation : std::runtime_error {
    // Path of a file holding the offending data, when one was written.
    std::string record_path;
    explicit InvariantViolation(const std::string& msg, std::string record = "")
        : std::runtime_error(msg), record_path(std::move(record)) {}
    static constexpr int exit_code = 3;
};

} // namespace toricray

#endif
