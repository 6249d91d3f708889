#pragma once

namespace aliasfree {

/// Bessel function of the first kind, order one. Absolute error below 1e-10
/// for |x| <= 50. Throws DomainError on non-finite input.
double bessel_j1(double x);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

/// exp(-|x|) * I0(x); stays finite where I0 overflows.
double bessel_i0_scaled(double x);

/// J1(x) / x with the limit 1/2 at the origin.
double jinc(double x);

}  // namespace aliasfree
