#pragma once

namespace ale::cli {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ale::cli
