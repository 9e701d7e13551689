#pragma once

namespace gld {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gld
