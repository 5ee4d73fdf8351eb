#pragma once

namespace crystalwalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace crystalwalk
