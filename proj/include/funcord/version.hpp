#pragma once

namespace funcord {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace funcord
