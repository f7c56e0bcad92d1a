#pragma once

#include <stdexcept>
#include <string>

namespace qbb {

// Bad arguments or malformed configuration. CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Register cap / memory budget exceeded. CLI exit code 3.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A party touched a qubit it does not own, or a malformed exchange. CLI exit code 2.
struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant broke. CLI exit code 4.
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbb
