#pragma once

namespace dfsl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dfsl
