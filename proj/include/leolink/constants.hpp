#pragma once

namespace leolink {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kEarthRadiusM = 6371000.0;    // spherical Earth model
inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace leolink
