#include "cmaf/maturity.hpp"

#include "cmaf/error.hpp"

namespace cmaf {

const std::array<MaturityLevel, kLevelCount>& maturity_scale() {
    static const std::array<MaturityLevel, kLevelCount> scale{{
        {0, "Incomplete", "Not existing"},
        {1, "Initial", "Reactive"},
        {2, "Basic", "Managed"},
        {3, "Advanced", "Defined"},
        {4, "Effective", "Quantitatively Managed"},
        {5, "Efficient", "Optimized"},
    }};
    return scale;
}

const MaturityLevel& maturity_level(int ordinal) {
    if (ordinal < kMinLevel || ordinal > kMaxLevel) {
        throw Error(ErrorKind::usage,
                    "maturity level out of range: " + std::to_string(ordinal));
    }
    return maturity_scale()[static_cast<std::size_t>(ordinal)];
}

std::string level_display_name(int ordinal) {
    const MaturityLevel& level = maturity_level(ordinal);
    return std::string(level.short_name) + " - " + std::string(level.long_name);
}

} // namespace cmaf
