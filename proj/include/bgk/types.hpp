#pragma once

#include <complex>

namespace bgk {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

// sqrt(pi/2), sqrt(2), 1/sqrt(6) spelled out once
inline constexpr double SQRT_PI_OVER_2 = 1.2533141373155002512078826424;
inline constexpr double SQRT_2 = 1.4142135623730950488016887242;
inline constexpr double INV_SQRT_6 = 0.4082482904638630163662140124;
inline constexpr double PI = 3.1415926535897932384626433833;

}  // namespace bgk
