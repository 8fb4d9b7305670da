#pragma once

namespace fisgen {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace fisgen
