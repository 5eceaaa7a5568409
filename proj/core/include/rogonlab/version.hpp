#pragma once

namespace rogonlab {
inline constexpr const char* kVersion = "0.1.0";
}
