#pragma once

#include <stdexcept>
#include <string>

namespace readmet {

// Bad input data: unreadable files, malformed CSV, empty corpora.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Bad model artifacts: schema violations, feature mismatches, degenerate fits.
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace readmet
