#pragma once

namespace srgen {
inline constexpr const char* kToolVersion = "0.1.0";
}
