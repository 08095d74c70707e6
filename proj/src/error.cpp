#include "spatialui/error.hpp"

namespace spatialui {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::NotFound: return "not-found";
        case ErrorCode::Permission: return "permission";
        case ErrorCode::InvalidState: return "invalid-state";
        case ErrorCode::Protocol: return "protocol";
        case ErrorCode::Format: return "format";
        case ErrorCode::UnsupportedVersion: return "unsupported-version";
        case ErrorCode::UnsupportedFormat: return "unsupported-format";
        case ErrorCode::OutOfDomain: return "out-of-domain";
        case ErrorCode::TruncatedFile: return "truncated-file";
        case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace spatialui
