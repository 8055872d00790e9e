#include "thermint/phase.hpp"

#include <cmath>

namespace thermint {

namespace {
constexpr long double kTwoPiLong = 6.283185307179586476925286766559005768L;
}

long double propagation_delay(double t, double length, double c) {
    return static_cast<long double>(t) -
           static_cast<long double>(length) / static_cast<long double>(c);
}

double reduced_phase(double omega, long double delay) {
    long double phase = std::fmod(static_cast<long double>(omega) * delay, kTwoPiLong);
    if (phase < 0.0L) phase += kTwoPiLong;
    auto out = static_cast<double>(phase);
    return out >= kTwoPi ? 0.0 : out;
}

double wrap_phase(double angle) {
    double out = std::fmod(angle, kTwoPi);
    if (out < 0.0) out += kTwoPi;
    return out >= kTwoPi ? 0.0 : out;
}

double angular_distance(double a, double b) {
    double d = std::remainder(a - b, kTwoPi);
    return d <= -kTwoPi / 2 ? d + kTwoPi : d;
}

}  // namespace thermint
