#include "firstlook/error.hpp"

namespace firstlook {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyCloud: return "EmptyCloud";
        case ErrorCode::InvalidTarget: return "InvalidTarget";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::InvalidCamera: return "InvalidCamera";
        case ErrorCode::DegenerateFrame: return "DegenerateFrame";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::DegenerateViewDirection: return "DegenerateViewDirection";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::EmptyRoi: return "EmptyRoi";
        case ErrorCode::EmptyLog: return "EmptyLog";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::RuntimeAbort: return "RuntimeAbort";
    }
    return "Unknown";
}

}  // namespace firstlook
