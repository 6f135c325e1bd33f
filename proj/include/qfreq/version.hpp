#pragma once

namespace qfreq {
inline constexpr const char* kToolVersion = "0.1.0";
}
