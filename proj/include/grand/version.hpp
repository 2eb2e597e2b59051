#pragma once

namespace grand {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace grand
