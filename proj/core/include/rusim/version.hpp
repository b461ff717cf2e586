#pragma once

#include <string_view>

namespace rusim {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace rusim
