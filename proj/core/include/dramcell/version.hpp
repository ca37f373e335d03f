#pragma once

namespace dramcell {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dramcell
