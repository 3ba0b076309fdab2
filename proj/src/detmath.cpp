#include "bpwm/detmath.hpp"

#include <cmath>

namespace bpwm::detmath {
namespace {

// pi/180, nearest double.
constexpr double kDegToRad = 0x1.1df46a2529d39p-6;

// Taylor kernels for |x| <= pi/4, plain Horner form. Every coefficient
// is one exact IEEE division of representable integers and the
// evaluation order is fixed, so results depend only on the input
// (the library is compiled with FP contraction off).
double sin_kernel_deg(double d) {
  const double x = d * kDegToRad;
  const double y = x * x;
  double p = 0x1.0p0 / 355687428096000.0;      // 1/17!
  p = p * y - 1.0 / 1307674368000.0;           // 1/15!
  p = p * y + 1.0 / 6227020800.0;              // 1/13!
  p = p * y - 1.0 / 39916800.0;                // 1/11!
  p = p * y + 1.0 / 362880.0;                  // 1/9!
  p = p * y - 1.0 / 5040.0;                    // 1/7!
  p = p * y + 1.0 / 120.0;                     // 1/5!
  p = p * y - 1.0 / 6.0;                       // 1/3!
  p = p * y + 1.0;
  return x * p;
}

double cos_kernel_deg(double d) {
  const double x = d * kDegToRad;
  const double y = x * x;
  double p = 1.0 / 20922789888000.0;           // 1/16!
  p = p * y - 1.0 / 87178291200.0;             // 1/14!
  p = p * y + 1.0 / 479001600.0;               // 1/12!
  p = p * y - 1.0 / 3628800.0;                 // 1/10!
  p = p * y + 1.0 / 40320.0;                   // 1/8!
  p = p * y - 1.0 / 720.0;                     // 1/6!
  p = p * y + 1.0 / 24.0;                      // 1/4!
  p = p * y - 1.0 / 2.0;                       // 1/2!
  p = p * y + 1.0;
  return p;
}

// Quadrant fold into [0, 90), then co-function fold into [0, 45].
void sincos_deg(double degrees, double& s, double& c) {
  double r = std::fmod(degrees, 360.0);  // fmod is exact
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;  // r + 360 can round up to 360 for tiny negatives
  const int quad = static_cast<int>(r / 90.0);
  const double a = r - 90.0 * quad;
  double s0, c0;
  if (a <= 45.0) {
    s0 = sin_kernel_deg(a);
    c0 = cos_kernel_deg(a);
  } else {
    s0 = cos_kernel_deg(90.0 - a);
    c0 = sin_kernel_deg(90.0 - a);
  }
  switch (quad) {
    case 0: s = s0;  c = c0;  break;
    case 1: s = c0;  c = -s0; break;
    case 2: s = -s0; c = -c0; break;
    default: s = -c0; c = s0; break;
  }
}

}  // namespace

double sin_deg(double degrees) {
  double s, c;
  sincos_deg(degrees, s, c);
  return s;
}

double cos_deg(double degrees) {
  double s, c;
  sincos_deg(degrees, s, c);
  return c;
}

double round_half_up(double x) { return std::floor(x + 0.5); }

}  // namespace bpwm::detmath
