#pragma once

namespace slowdiff {
inline constexpr const char* kVersion = "0.1.0";
}
