#pragma once

#include <stdexcept>
#include <string>

namespace skb {

// Dimension/shape disagreement between operands.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric parameter outside its documented domain.
struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Rank-deficient / non-invertible matrix where invertibility is required.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (bad magic, ragged CSV, ...).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace skb
