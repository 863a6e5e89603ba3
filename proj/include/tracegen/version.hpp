#pragma once

namespace tracegen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tracegen
