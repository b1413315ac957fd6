#pragma once

namespace richlab {
inline constexpr const char* tool_version = "0.3.0";
}
