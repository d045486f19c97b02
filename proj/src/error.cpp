#include "treepoly/error.hpp"

namespace treepoly {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid argument";
        case ErrorCode::malformed_input: return "malformed input";
        case ErrorCode::duplicate_edge: return "duplicate edge";
        case ErrorCode::disconnected: return "disconnected";
        case ErrorCode::cycle: return "cycle detected";
        case ErrorCode::label_out_of_range: return "label out of range";
        case ErrorCode::malformed_code: return "malformed code";
        case ErrorCode::overflow: return "coefficient overflow";
        case ErrorCode::count_mismatch: return "count mismatch";
        case ErrorCode::store_corrupt: return "store corrupt";
        case ErrorCode::io: return "i/o error";
        case ErrorCode::level_sealed: return "level sealed";
        case ErrorCode::level_unsealed: return "level unsealed";
        case ErrorCode::invariant_violation: return "invariant violation";
        case ErrorCode::unknown_report: return "unknown report";
        case ErrorCode::empty_tree: return "empty tree";
        case ErrorCode::too_large: return "too large";
    }
    return "unknown error";
}

}  // namespace treepoly
