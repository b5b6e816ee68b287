#pragma once

namespace gliomil::stats {

// Standard normal CDF.
double norm_cdf(double x);

// Standard normal density.
double norm_pdf(double x);

// Inverse standard normal CDF. Domain (0,1); throws ContractError outside.
double norm_ppf(double p);

// Bivariate standard normal CDF P(X <= h, Y <= k) with correlation rho,
// |rho| < 1. Drezner-style reduction to a one-dimensional integral over
// the correlation parameter, evaluated by adaptive Simpson quadrature.
double bvn_cdf(double h, double k, double rho);

} // namespace gliomil::stats
