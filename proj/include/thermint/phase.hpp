#pragma once

namespace thermint {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Propagation delay t - length/c, kept in extended precision.
long double propagation_delay(double t, double length, double c);

/// omega * delay reduced to [0, 2pi).
///
/// The product is formed and reduced in extended precision. At optical
/// frequencies (omega ~ 1e15 rad/s) and delays of microseconds the raw
/// phase is ~1e9 rad, where a double keeps only ~1e-7 rad of absolute
/// resolution.
double reduced_phase(double omega, long double delay);

/// Wraps an arbitrary angle to [0, 2pi).
double wrap_phase(double angle);

/// Shortest signed distance between two angles, in (-pi, pi].
double angular_distance(double a, double b);

}  // namespace thermint
