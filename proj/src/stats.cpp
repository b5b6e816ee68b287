#include "gliomil/stats.hpp"

#include <cmath>

#include "gliomil/errors.hpp"

namespace gliomil::stats {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
} // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

double norm_ppf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ContractError("norm_ppf: p must lie in (0,1)");

    // Acklam's rational approximation, then one Halley refinement step.
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

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    double e = norm_cdf(x) - p;
    double u = e / norm_pdf(x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

namespace {

// Integrand of d Phi2 / d rho (Plackett's identity).
double bvn_integrand(double h, double k, double r) {
    double one_minus_r2 = 1.0 - r * r;
    return std::exp(-(h * h - 2.0 * r * h * k + k * k) / (2.0 * one_minus_r2)) /
           (kTwoPi * std::sqrt(one_minus_r2));
}

double simpson(double h, double k, double lo, double hi, double flo, double fmid, double fhi,
               double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double lm = 0.5 * (lo + mid), mh = 0.5 * (mid + hi);
    double flm = bvn_integrand(h, k, lm), fmh = bvn_integrand(h, k, mh);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * fmh + fhi);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(h, k, lo, mid, flo, flm, fmid, 0.5 * tol, depth - 1) +
           simpson(h, k, mid, hi, fmid, fmh, fhi, 0.5 * tol, depth - 1);
}

} // namespace

double bvn_cdf(double h, double k, double rho) {
    if (!(rho > -1.0 && rho < 1.0)) throw ContractError("bvn_cdf: |rho| must be < 1");
    if (rho == 0.0) return norm_cdf(h) * norm_cdf(k);
    double lo = 0.0, hi = rho;
    double flo = bvn_integrand(h, k, lo);
    double fhi = bvn_integrand(h, k, hi);
    double fmid = bvn_integrand(h, k, 0.5 * (lo + hi));
    double integral = simpson(h, k, lo, hi, flo, fmid, fhi, 1e-14, 40);
    return norm_cdf(h) * norm_cdf(k) + integral;
}

} // namespace gliomil::stats
