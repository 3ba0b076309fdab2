#pragma once

namespace bpwm::detmath {

// Trigonometry for degree arguments, evaluated with fixed polynomial
// kernels instead of libm so that results are bit-identical on every
// IEEE-754 platform. Accuracy is a few ulps, which is plenty for the
// geometric attacks; determinism is the contract.
double sin_deg(double degrees);
double cos_deg(double degrees);

// floor(x + 0.5): the project-wide rounding rule for real-valued pixel
// results and resampling coordinates (halves go toward +infinity).
double round_half_up(double x);

}  // namespace bpwm::detmath
