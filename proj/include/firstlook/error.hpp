#ifndef FIRSTLOOK_ERROR_HPP_
#define FIRSTLOOK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace firstlook {

enum class ErrorCode {
    EmptyCloud,
    InvalidTarget,
    ParseError,
    IoError,
    InvalidRange,
    InvalidCamera,
    DegenerateFrame,
    CoincidentPoints,
    DegenerateViewDirection,
    StepTooLarge,
    InvalidParams,
    EmptyRoi,
    EmptyLog,
    ValidationError,
    RuntimeAbort,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace firstlook

#endif  // FIRSTLOOK_ERROR_HPP_
