#pragma once

#include <stdexcept>
#include <string>

namespace lidarseg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A named configuration constraint was violated.
struct ConfigError : Error {
    std::string field;
    ConfigError(std::string field_, const std::string& reason)
        : Error(field_ + ": " + reason), field(std::move(field_)) {}
};

struct IoError : Error {
    using Error::Error;
};

// Malformed input file content; line is 1-based.
struct ParseError : Error {
    long line;
    ParseError(long line_, const std::string& reason)
        : Error("line " + std::to_string(line_) + ": " + reason), line(line_) {}
};

struct ZeroRangeError : Error {
    ZeroRangeError() : Error("point range is zero (or below 1e-9)") {}
};

struct EmptyImageError : Error {
    EmptyImageError() : Error("image has no positive pixel") {}
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct BadWindowError : Error {
    using Error::Error;
};

struct MissingTruthError : Error {
    std::string stem;
    explicit MissingTruthError(std::string stem_)
        : Error("no truth mask for scan '" + stem_ + "'"), stem(std::move(stem_)) {}
};

} // namespace lidarseg
