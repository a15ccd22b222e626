#include "gzk/error.hpp"

namespace gzk {

const char* error_class_name(ErrorClass c) {
    switch (c) {
        case ErrorClass::ConfigError: return "ConfigError";
        case ErrorClass::NonFinite: return "NonFinite";
        case ErrorClass::NoConvergence: return "NoConvergence";
        case ErrorClass::DomainTooSmall: return "DomainTooSmall";
        case ErrorClass::ResolutionError: return "ResolutionError";
        case ErrorClass::MissingArtifact: return "MissingArtifact";
        case ErrorClass::IoError: return "IoError";
    }
    return "Error";
}

} // namespace gzk
