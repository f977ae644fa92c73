// SPDX-License-Identifier: Apache-2.0
#include "quantdet/gauss.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quantdet {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;

// Rational approximation for the inverse standard normal CDF (Acklam's
// coefficients, relative error ~1.15e-9), used only as the seed for Newton
// refinement below.
double inv_cdf_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  if (p < plow) {
    double g = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * g + c[1]) * g + c[2]) * g + c[3]) * g + c[4]) * g + c[5]) /
           ((((d[0] * g + d[1]) * g + d[2]) * g + d[3]) * g + 1.0);
  }
  if (p > 1.0 - plow) {
    double g = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * g + c[1]) * g + c[2]) * g + c[3]) * g + c[4]) * g + c[5]) /
           ((((d[0] * g + d[1]) * g + d[2]) * g + d[3]) * g + 1.0);
  }
  double r = p - 0.5;
  double s = r * r;
  return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
         (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}
}  // namespace

double gaussian_ccdf(double beta) {
  if (std::isnan(beta)) return std::numeric_limits<double>::quiet_NaN();
  if (beta == std::numeric_limits<double>::infinity()) return 0.0;
  if (beta == -std::numeric_limits<double>::infinity()) return 1.0;
  return 0.5 * std::erfc(beta * kInvSqrt2);
}

double gaussian_ccdf_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gaussian_ccdf_inv: p must lie in (0,1)");
  // Upper-tail convention: ccdf(x) = cdf(-x), so negate the CDF inverse.
  double x = -inv_cdf_seed(p);
  // Two Newton steps on f(x) = ccdf(x) - p; f'(x) = -pdf(x).
  for (int it = 0; it < 2; ++it) {
    double f = gaussian_ccdf(x) - p;
    double df = -gaussian_pdf(x);
    if (df != 0.0) x -= f / df;
  }
  return x;
}

double gaussian_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double omega(double x) {
  if (std::isinf(x)) return 0.0;
  return -x * gaussian_pdf(x);
}

double noncentral_ccdf(double beta, double lambda) { return gaussian_ccdf(beta - lambda); }

}  // namespace quantdet
