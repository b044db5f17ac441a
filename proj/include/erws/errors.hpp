#pragma once

#include <stdexcept>

namespace erws {

struct NormalizationError : std::runtime_error { using std::runtime_error::runtime_error; };
struct RangeError : std::runtime_error { using std::runtime_error::runtime_error; };
struct DomainError : std::runtime_error { using std::runtime_error::runtime_error; };
struct CapExceeded : std::runtime_error { using std::runtime_error::runtime_error; };
struct InsufficientData : std::runtime_error { using std::runtime_error::runtime_error; };
struct ResourceError : std::runtime_error { using std::runtime_error::runtime_error; };

// Thrown only where a vanishing denominator has no iterative fallback
// (the continuous-time analogue); everywhere else resonances fall back
// to recurrence iteration silently and are reported through flags.
struct ResonanceError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace erws
