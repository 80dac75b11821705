#pragma once

namespace steinso {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace steinso
