#include "helmdg/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmdg {

namespace {

constexpr double kSeriesLimit = 12.0;

void require_finite(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel: non-finite argument");
}

// sum_k (-1)^k (x^2/4)^k / (k! (k+nu)!), nu in {0, 1}.
double power_series(double x, int nu) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && q < k * k) break;
  }
  return nu == 0 ? sum : 0.5 * x * sum;
}

// Hankel asymptotic expansion, x >= kSeriesLimit:
//   J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi),  chi = x - (nu/2 + 1/4) pi.
double asymptotic(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double a = 1.0;  // a_k(nu) / x^k
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(a) > last) break;  // past the smallest term
    last = std::abs(a);
    // k odd contributes to Q, k even to P; signs alternate within each.
    switch (k % 4) {
      case 1: q += a; break;
      case 2: p -= a; break;
      case 3: q -= a; break;
      case 0: p += a; break;
    }
    if (last < 1e-17) break;
  }
  const double c = std::cos(x), s = std::sin(x);
  const double r = std::numbers::sqrt2 / 2.0;
  double cos_chi, sin_chi;
  if (nu == 0) {  // chi = x - pi/4
    cos_chi = r * (c + s);
    sin_chi = r * (s - c);
  } else {  // chi = x - 3pi/4
    cos_chi = r * (s - c);
    sin_chi = -r * (s + c);
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x);
  const double ax = std::abs(x);
  return ax <= kSeriesLimit ? power_series(ax, 0) : asymptotic(ax, 0);
}

double bessel_j1(double x) {
  require_finite(x);
  const double ax = std::abs(x);
  const double v = ax <= kSeriesLimit ? power_series(ax, 1) : asymptotic(ax, 1);
  return x < 0.0 ? -v : v;
}

double sinc_scaled(double k, double r) {
  if (!std::isfinite(k) || !std::isfinite(r)) throw std::domain_error("sinc_scaled: non-finite argument");
  const double z = k * r;
  if (std::abs(z) < 1e-2) {
    const double z2 = z * z;
    return k * (1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0)));
  }
  return std::sin(z) / r;
}

}  // namespace helmdg
