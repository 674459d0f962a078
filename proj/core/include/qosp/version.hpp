#pragma once

namespace qosp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qosp
