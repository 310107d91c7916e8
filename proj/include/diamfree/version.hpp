#pragma once

namespace diamfree {

inline constexpr const char* kVersion = "0.1.0";

}
