#pragma once

namespace radlab {

inline constexpr const char* kProjectVersion = "0.1.0";
inline constexpr const char* kCatalogVersion = "radlab-catalog-1";

}  // namespace radlab
