#pragma once

namespace smcmix {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever a change alters any pseudo-random output sequence.
inline constexpr const char* kRngVersion = "1";

}  // namespace smcmix
