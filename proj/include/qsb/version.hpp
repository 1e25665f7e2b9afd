#pragma once

namespace qsb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsb
