#pragma once

#include <stdexcept>
#include <string>

namespace gzk {

// Failure classes used across the toolkit. The CLI maps them to exit codes
// (config -> 2, numeric -> 3, io -> 4) and prints "E:<Class>: message".
enum class ErrorClass {
    ConfigError,     // bad parameters, malformed config, unknown keys
    NonFinite,       // NaN/Inf appeared in a field
    NoConvergence,   // iteration exhausted without meeting tolerance
    DomainTooSmall,  // profile does not decay inside the periodic box
    ResolutionError, // requested scale not representable on the lattice
    MissingArtifact, // expected file absent from a run directory
    IoError,         // filesystem failure
};

const char* error_class_name(ErrorClass c);

class Error : public std::runtime_error {
  public:
    Error(ErrorClass cls, const std::string& msg)
        : std::runtime_error(std::string(error_class_name(cls)) + ": " + msg), cls_(cls) {}

    ErrorClass cls() const { return cls_; }

    // Single-line machine-parsable form used on stderr.
    std::string line() const { return std::string("E:") + what(); }

    int exit_code() const {
        switch (cls_) {
            case ErrorClass::ConfigError: return 2;
            case ErrorClass::NonFinite:
            case ErrorClass::NoConvergence:
            case ErrorClass::DomainTooSmall:
            case ErrorClass::ResolutionError: return 3;
            case ErrorClass::MissingArtifact:
            case ErrorClass::IoError: return 4;
        }
        return 1;
    }

  private:
    ErrorClass cls_;
};

[[noreturn]] inline void fail(ErrorClass cls, const std::string& msg) { throw Error(cls, msg); }

} // namespace gzk
