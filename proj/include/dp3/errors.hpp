#pragma once

#include <stdexcept>
#include <string>

namespace dp3 {

/// Input arrays do not match the grid (wrong length, mismatched fields).
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A non-finite value appeared; `where` names the offending term or stage.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& where)
        : std::runtime_error("non-finite value in " + where), where(where) {}
    std::string where;
};

/// Argument outside its admissible range (epsilon <= 0, block index, N >= L/2, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Paired states fail their mutual round-trip check.
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A theorem hypothesis is violated by the supplied data (e.g. v0(x0) <= 0).
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An initial value sits on the wrong side of a closed-form threshold.
struct threshold_error : std::runtime_error {
    threshold_error(const std::string& msg, double threshold)
        : std::runtime_error(msg), threshold(threshold) {}
    double threshold;
};

/// Configuration file fails schema validation.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dp3
