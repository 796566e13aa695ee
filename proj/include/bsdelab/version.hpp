#pragma once

namespace bsdelab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace bsdelab
