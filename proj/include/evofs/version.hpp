#pragma once

namespace evofs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace evofs
