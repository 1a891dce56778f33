#pragma once

namespace fhp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fhp
