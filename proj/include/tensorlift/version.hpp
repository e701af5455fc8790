#pragma once

namespace tensorlift {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kEngineName = "tensorlift";

}  // namespace tensorlift
