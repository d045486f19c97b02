#pragma once

#include <stdexcept>
#include <string>

namespace treepoly {

// Values mirror tp_status in the C API one-to-one.
enum class ErrorCode : int {
    invalid_argument = 1,
    malformed_input = 2,
    duplicate_edge = 3,
    disconnected = 4,
    cycle = 5,
    label_out_of_range = 6,
    malformed_code = 7,
    overflow = 8,
    count_mismatch = 9,
    store_corrupt = 10,
    io = 11,
    level_sealed = 12,
    level_unsealed = 13,
    invariant_violation = 14,
    unknown_report = 15,
    empty_tree = 16,
    too_large = 17,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace treepoly
