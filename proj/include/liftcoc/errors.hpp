#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liftcoc {

// Trace requested for an operator whose identity component has nonzero
// residue; the diagonal sum diverges.
struct NonTraceClassError : std::runtime_error {
    explicit NonTraceClassError(const std::string &what) : std::runtime_error(what) {}
};

struct ArityMismatchError : std::runtime_error {
    explicit ArityMismatchError(const std::string &what) : std::runtime_error(what) {}
};

struct NotACycleError : std::runtime_error {
    explicit NotACycleError(const std::string &what) : std::runtime_error(what) {}
};

struct DimensionTooLargeError : std::runtime_error {
    explicit DimensionTooLargeError(const std::string &what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string &what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

struct IndexOutOfRangeError : std::runtime_error {
    IndexOutOfRangeError(const std::string &what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

} // namespace liftcoc
