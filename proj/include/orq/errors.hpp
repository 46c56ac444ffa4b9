#pragma once

#include <stdexcept>
#include <string>

namespace orq {

struct EmptyInput : std::invalid_argument {
    EmptyInput() : std::invalid_argument("empty input point set") {}
};

struct InvalidQuery : std::invalid_argument {
    explicit InvalidQuery(const std::string& what) : std::invalid_argument(what) {}
};

struct LineThroughOrigin : std::domain_error {
    LineThroughOrigin() : std::domain_error("line passes through the origin; dual point is at infinity") {}
};

struct DegenerateDual : std::domain_error {
    explicit DegenerateDual(const std::string& what) : std::domain_error(what) {}
};

struct CapExceeded : std::length_error {
    explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

struct NotCanonical : std::domain_error {
    explicit NotCanonical(const std::string& what) : std::domain_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicatePoint : std::runtime_error {
    explicit DuplicatePoint(const std::string& what) : std::runtime_error(what) {}
};

struct CoordinateOutOfRange : std::runtime_error {
    explicit CoordinateOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orq
