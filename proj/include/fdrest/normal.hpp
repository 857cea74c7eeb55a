// Standard normal density, distribution and quantile functions.
//
// The quantile uses Acklam's rational approximation refined by one Halley
// step against erfc, giving absolute error well below 1e-9 across
// (1e-300, 1 - 1e-16).

#pragma once

namespace fdrest {

// density phi(z)
double norm_pdf(double z);

// distribution Phi(z), computed via erfc to keep tail precision
double norm_cdf(double z);

// quantile Phi^{-1}(u); throws std::domain_error for u <= 0 or u >= 1
double inv_norm_cdf(double u);

}  // namespace fdrest
