#pragma once

namespace helmdg {

/// Bessel function of the first kind, order 0. Absolute error below 1e-10 on
/// [0, 500]. Throws std::domain_error for non-finite input.
double bessel_j0(double x);

/// Bessel function of the first kind, order 1 (odd in x).
double bessel_j1(double x);

/// sin(k r) / r, continuous at r = 0 where it equals k.
double sinc_scaled(double k, double r);

}  // namespace helmdg
