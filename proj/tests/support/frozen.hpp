// Reference values computed once at 40 significant digits (mpmath), with the
// winding numbers found by direct search.
#pragma once

namespace frozen {

// a = 1, M = 1, theta_0 = 0, g = tanh(pi), z = 0.5.
inline constexpr double kTanhPi = 0.99627207622074994426;
inline constexpr double kCothHalfPi = 1.09033141072736823003;
inline constexpr double kW05Re = 0.002624831464154252196;
inline constexpr double kW05Im = 0.000242832528164687627;
inline constexpr double kPhi05Re = 0.000716915998079734956;
inline constexpr double kPhi05Im = 0.000595499733997391142;
inline constexpr double kQ05Mu0 = 0.000713441644153760451;
inline constexpr double kQ05Mu03 = 0.000677016764929057307;
inline constexpr double kEnergyUnitBall = 0.249068019055187486066;

// a = 1, M = 3, g_k = 1, theta_k = 2 pi k / 3, z = 0.5 + 0.2i.
inline constexpr double kW3Re = -0.169670472820016664;
inline constexpr double kW3Im = 0.168053941148458995;
inline constexpr double kQ3Mu05 = -0.054127322331407133;

inline constexpr double kCoshPiA1 = -11.59195327552152063;  // cosh(pi A) at a = 1

}  // namespace frozen
