#pragma once

namespace gammareg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gammareg
