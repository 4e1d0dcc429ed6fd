#pragma once

#include <array>
#include <string>
#include <string_view>

namespace cmaf {

inline constexpr int kMinLevel = 0;
inline constexpr int kMaxLevel = 5;
inline constexpr int kLevelCount = 6;

/// One step of the six-level maturity scale.
struct MaturityLevel {
    int ordinal;
    std::string_view short_name;
    std::string_view long_name;
};

/// The fixed six-level scale, ordered 0..5.
const std::array<MaturityLevel, kLevelCount>& maturity_scale();

/// Throws Error{usage} when ordinal is outside 0..5.
const MaturityLevel& maturity_level(int ordinal);

/// "Advanced - Defined" style display name.
std::string level_display_name(int ordinal);

} // namespace cmaf
