#pragma once

namespace starsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace starsim
