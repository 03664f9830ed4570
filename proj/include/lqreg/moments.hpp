#pragma once

// Bivariate central co-moments and univariate summary statistics.
//
// All moments use the averaged convention mu_rs = (1/n) * sum(x^r * y^s) on
// mean-centered pairs.  The slope of interest is invariant to a common
// rescaling of the cubic coefficients, so 1/n-vs-sum never changes results,
// but the averaged form keeps magnitudes comparable across sample sizes.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "lqreg/errors.hpp"
#include "lqreg/sample.hpp"

namespace lqreg {

// ============================================================
// moment containers
// ============================================================

struct MomentSet {
    std::size_t n = 0; // 0 marks population moments

    // second order
    double mu20 = 0, mu02 = 0, mu11 = 0;
    // third order
    double mu30 = 0, mu03 = 0, mu21 = 0, mu12 = 0;
    // fourth order
    double mu40 = 0, mu04 = 0, mu31 = 0, mu13 = 0, mu22 = 0;

    double sigma_x = 0, sigma_y = 0;

    // sigma_* vanished relative to the pre-centering scale of the series
    bool degenerate_x = false;
    bool degenerate_y = false;

    bool degenerate() const { return degenerate_x || degenerate_y; }
};

// Standardized and Gaussian-relative co-moment diagnostics.
struct CoMomentReport {
    double rho = 0; // linear correlation mu11 / (sigma_x * sigma_y)

    // lambda_rs = mu_rs / (sigma_x^r * sigma_y^s)
    double lambda21 = 0, lambda12 = 0;
    double lambda31 = 0, lambda13 = 0, lambda22 = 0;

    // systematic ratios; undefined when the denominator vanishes
    double sys_coskew = 0; // mu21 / mu30
    double sys_cokurt = 0; // mu31 / mu40
    bool sys_coskew_defined = false;
    bool sys_cokurt_defined = false;

    // excess over the bivariate-normal values implied by (sigma_x, sigma_y, rho)
    double kappa13 = 0; // mu13 - 3 * rho * sigma_x * sigma_y^3
    double kappa31 = 0; // mu31 - 3 * rho * sigma_x^3 * sigma_y
    double kappa22 = 0; // mu22 - sigma_x^2 * sigma_y^2 * (1 + 2 rho^2)
};

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0;
    double variance = 0; // 1/n convention
    double st_dev = 0;
    double cv = 0;                 // st_dev / mean, absolute value
    bool cv_negative_mean = false; // set when the mean was negative
    double skewness = 0;           // mu3 / sigma^3
    double excess_kurtosis = 0;    // mu4 / sigma^4 - 3
    double z_skew = 0;             // skewness / sqrt(6/n)
    double z_kurt = 0;             // excess_kurtosis / sqrt(24/n)
};

// ============================================================
// computation
// ============================================================

// Single pass over centered pairs; degenerate series are flagged but the
// moments are still returned.  Intended for n >= 5 (the panel path enforces
// it); any n >= 2 is accepted so hand fixtures can be checked directly.
inline MomentSet compute_moments(const BivariatePairs& p) {
    if (p.n < 2) throw input_error("need at least 2 pairs to compute moments");
    if (p.x.size() != p.n || p.y.size() != p.n) throw input_error("inconsistent pair buffers");

    MomentSet m;
    m.n = p.n;
    for (std::size_t i = 0; i < p.n; ++i) {
        const double x = p.x[i], y = p.y[i];
        const double x2 = x * x, y2 = y * y;
        m.mu20 += x2;
        m.mu02 += y2;
        m.mu11 += x * y;
        m.mu30 += x2 * x;
        m.mu03 += y2 * y;
        m.mu21 += x2 * y;
        m.mu12 += x * y2;
        m.mu40 += x2 * x2;
        m.mu04 += y2 * y2;
        m.mu31 += x2 * x * y;
        m.mu13 += x * y2 * y;
        m.mu22 += x2 * y2;
    }
    const double inv = 1.0 / static_cast<double>(p.n);
    m.mu20 *= inv; m.mu02 *= inv; m.mu11 *= inv;
    m.mu30 *= inv; m.mu03 *= inv; m.mu21 *= inv; m.mu12 *= inv;
    m.mu40 *= inv; m.mu04 *= inv; m.mu31 *= inv; m.mu13 *= inv; m.mu22 *= inv;

    m.sigma_x = std::sqrt(std::max(0.0, m.mu20));
    m.sigma_y = std::sqrt(std::max(0.0, m.mu02));
    m.degenerate_x = m.sigma_x <= 1e-12 * p.x_scale;
    m.degenerate_y = m.sigma_y <= 1e-12 * p.y_scale;
    return m;
}

// Population moments of a centered bivariate normal.  Every odd moment is
// zero and the fourth-order block follows the Isserlis identities:
//   mu40 = 3 sigma_x^4           mu04 = 3 sigma_y^4
//   mu31 = 3 rho sigma_x^3 sigma_y   mu13 = 3 rho sigma_x sigma_y^3
//   mu22 = sigma_x^2 sigma_y^2 (1 + 2 rho^2)
inline MomentSet bivariate_normal_moments(double sigma_x, double sigma_y, double rho) {
    if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) throw input_error("sigma must be positive");
    if (!(rho > -1.0 && rho < 1.0)) throw input_error("rho must lie in (-1, 1)");
    MomentSet m;
    m.n = 0;
    const double sx2 = sigma_x * sigma_x, sy2 = sigma_y * sigma_y;
    m.mu20 = sx2;
    m.mu02 = sy2;
    m.mu11 = rho * sigma_x * sigma_y;
    m.mu40 = 3.0 * sx2 * sx2;
    m.mu04 = 3.0 * sy2 * sy2;
    m.mu31 = 3.0 * rho * sx2 * sigma_x * sigma_y;
    m.mu13 = 3.0 * rho * sigma_x * sy2 * sigma_y;
    m.mu22 = sx2 * sy2 * (1.0 + 2.0 * rho * rho);
    m.sigma_x = sigma_x;
    m.sigma_y = sigma_y;
    return m;
}

inline CoMomentReport comoment_report(const MomentSet& m) {
    if (m.degenerate() || m.sigma_x <= 0.0 || m.sigma_y <= 0.0)
        throw numeric_error("degenerate series: zero sigma");
    CoMomentReport r;
    const double sx = m.sigma_x, sy = m.sigma_y;
    r.rho = m.mu11 / (sx * sy);
    r.lambda21 = m.mu21 / (sx * sx * sy);
    r.lambda12 = m.mu12 / (sx * sy * sy);
    r.lambda31 = m.mu31 / (sx * sx * sx * sy);
    r.lambda13 = m.mu13 / (sx * sy * sy * sy);
    r.lambda22 = m.mu22 / (sx * sx * sy * sy);

    // Ratios are reported as 0/flagged instead of inf when the denominator
    // vanishes relative to its natural scale.
    const double sx3 = sx * sx * sx, sx4 = sx3 * sx;
    r.sys_coskew_defined = std::abs(m.mu30) > 1e-12 * sx3;
    r.sys_coskew = r.sys_coskew_defined ? m.mu21 / m.mu30 : 0.0;
    r.sys_cokurt_defined = std::abs(m.mu40) > 1e-12 * sx4;
    r.sys_cokurt = r.sys_cokurt_defined ? m.mu31 / m.mu40 : 0.0;

    r.kappa13 = m.mu13 - 3.0 * r.rho * sx * sy * sy * sy;
    r.kappa31 = m.mu31 - 3.0 * r.rho * sx3 * sy;
    r.kappa22 = m.mu22 - sx * sx * sy * sy * (1.0 + 2.0 * r.rho * r.rho);
    return r;
}

// Univariate summary of one raw (uncentered) series.
inline SummaryStats summary_stats(const std::vector<double>& values) {
    if (values.size() < 2) throw input_error("need at least 2 observations for summary statistics");
    const std::size_t n = values.size();
    const double mean = detail::mean_of(values);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double inv = 1.0 / static_cast<double>(n);
    m2 *= inv; m3 *= inv; m4 *= inv;

    SummaryStats s;
    s.n = n;
    s.mean = mean;
    s.variance = m2;
    s.st_dev = std::sqrt(std::max(0.0, m2));
    if (s.st_dev <= 1e-12 * detail::max_abs(values))
        throw numeric_error("zero variance: skewness and kurtosis undefined");
    if (mean == 0.0) {
        s.cv = std::numeric_limits<double>::infinity();
    } else {
        s.cv = std::abs(s.st_dev / mean);
        s.cv_negative_mean = mean < 0.0;
    }
    const double sig3 = s.st_dev * s.st_dev * s.st_dev;
    s.skewness = m3 / sig3;
    s.excess_kurtosis = m4 / (sig3 * s.st_dev) - 3.0;
    s.z_skew = s.skewness / std::sqrt(6.0 / static_cast<double>(n));
    s.z_kurt = s.excess_kurtosis / std::sqrt(24.0 / static_cast<double>(n));
    return s;
}

} // namespace lqreg
