// SPDX-License-Identifier: Apache-2.0
//
// Scalar Gaussian helpers: upper-tail probability, its inverse, the standard
// normal density, and the tail-mass derivative kernel. Everything downstream
// (interval probabilities, Fisher information, threshold calibration) reduces
// to these four functions, so they accept the extended reals and keep
// absolute accuracy around 1e-12.
#pragma once

namespace quantdet {

// P(Z >= beta) for Z ~ N(0,1). Accepts +-inf and returns the limit values.
double gaussian_ccdf(double beta);

// Inverse of gaussian_ccdf on (0,1). Roundtrip error <= 1e-10.
// Throws std::domain_error outside (0,1).
double gaussian_ccdf_inv(double p);

// Standard normal density.
double gaussian_pdf(double x);

// -x * gaussian_pdf(x); the derivative of the upper-tail mass with respect to
// the scale parameter enters through this kernel. Zero at +-inf.
double omega(double x);

// P(Z >= beta) for Z ~ N(lambda, 1): the shifted upper tail.
double noncentral_ccdf(double beta, double lambda);

}  // namespace quantdet
