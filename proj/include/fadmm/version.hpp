#pragma once

namespace fadmm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fadmm
