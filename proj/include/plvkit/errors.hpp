#pragma once

#include <stdexcept>
#include <string>

namespace plvkit {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text or binary content (bad syntax, missing mandatory keys).
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Syntactically valid input that requests a feature the toolkit does not read
// (e.g. vectorized data orientation, unknown binary sample type).
struct unsupported_format_error : error {
    explicit unsupported_format_error(const std::string& msg) : error(msg) {}
};

// Structurally invalid data: shape mismatches, out-of-range markers,
// duplicate cells, missing inputs.
struct data_error : error {
    explicit data_error(const std::string& msg) : error(msg) {}
};

// Invalid run configuration (bad band edges, missing config keys, bad paths).
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Numeric degeneracy: zero variance with nonzero mean, insufficient trials.
struct numeric_error : error {
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

struct insufficient_trials_error : numeric_error {
    explicit insufficient_trials_error(const std::string& msg) : numeric_error(msg) {}
};

struct degenerate_variance_error : numeric_error {
    explicit degenerate_variance_error(const std::string& msg) : numeric_error(msg) {}
};

}  // namespace plvkit
