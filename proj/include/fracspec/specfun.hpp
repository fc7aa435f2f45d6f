#pragma once

// Scalar special functions on the positive real axis.

namespace fracspec::specfun {

/// Gamma function for x > 0.  Throws DomainError otherwise.
double gamma(double x);

/// ln Gamma(x) for x > 0.  Ratios of gamma values should go through this
/// function rather than gamma() to stay clear of overflow.
double log_gamma(double x);

/// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta(double a, double b);

/// Gamma(x + s) / Gamma(x) evaluated in log space.  Both x and x + s must be positive.
double gamma_ratio(double x, double s);

}  // namespace fracspec::specfun
