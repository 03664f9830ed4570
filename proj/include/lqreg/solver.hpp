#pragma once

// Least-quartic slope estimation.
//
// For centered pairs, the mean fourth power of the residuals y - b*x is a
// quartic polynomial in the slope:
//
//   l(b) = mu40 b^4 - 4 mu31 b^3 + 6 mu22 b^2 - 4 mu13 b + mu04
//
// Its stationary points are the real roots of the first-order-condition
// cubic
//
//   mu40 b^3 - 3 mu31 b^2 + 3 mu22 b - mu13 = 0        (l'(b) = 4 * cubic(b))
//
// and the least-quartic slope is the root with the smallest loss.  Because
// mu40 > 0 the loss is coercive, so the global minimum is always attained at
// a critical point.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "lqreg/errors.hpp"
#include "lqreg/moments.hpp"

namespace lqreg {

// ============================================================
// polynomial containers
// ============================================================

struct CubicCoeffs {
    double c3 = 0, c2 = 0, c1 = 0, c0 = 0; // c3 b^3 + c2 b^2 + c1 b + c0

    double eval(double b) const { return ((c3 * b + c2) * b + c1) * b + c0; }
    double deriv(double b) const { return (3.0 * c3 * b + 2.0 * c2) * b + c1; }
    double max_abs_coeff() const {
        return std::max(std::max(std::abs(c3), std::abs(c2)),
                        std::max(std::abs(c1), std::abs(c0)));
    }
};

enum class SolverPath { closed_form_single_root, three_roots_argmin };

struct QuarticFit {
    double b_lq = 0;       // argmin of the loss
    double loss_at_min = 0;

    struct CriticalPoint {
        double b = 0;
        double second_derivative = 0; // 3 mu40 b^2 - 6 mu31 b + 3 mu22 (= l''(b)/4)
        double loss = 0;
    };
    std::vector<CriticalPoint> critical_points; // distinct stationary points, ascending

    int n_real_roots = 0; // real roots of the cubic counted with multiplicity: 1 or 3
    SolverPath solver_path = SolverPath::closed_form_single_root;
    double residual_foc = 0; // |cubic(b_lq)| / (max|coeff| * max(1, |b_lq|^3))
};

// ============================================================
// loss and first-order condition
// ============================================================

inline double quartic_loss(const MomentSet& m, double b) {
    return (((m.mu40 * b - 4.0 * m.mu31) * b + 6.0 * m.mu22) * b - 4.0 * m.mu13) * b + m.mu04;
}

inline CubicCoeffs foc_cubic(const MomentSet& m) {
    if (!(m.mu40 > 0.0)) throw numeric_error("degenerate x: mu40 must be positive");
    return {m.mu40, -3.0 * m.mu31, 3.0 * m.mu22, -m.mu13};
}

// ============================================================
// cubic root finding
// ============================================================

namespace detail {

struct CubicSolution {
    std::vector<double> roots;         // distinct real roots, ascending
    int n_real_with_multiplicity = 0;  // 1 or 3
};

// One guarded Newton polish: steps are kept only while the residual shrinks,
// so multiple roots (where the derivative vanishes) are never degraded.
inline double polish_root(const CubicCoeffs& c, double r) {
    for (int it = 0; it < 3; ++it) {
        const double f = c.eval(r);
        if (f == 0.0) break;
        const double fp = c.deriv(r);
        if (fp == 0.0) break;
        const double cand = r - f / fp;
        if (!std::isfinite(cand) || std::abs(c.eval(cand)) >= std::abs(f)) break;
        r = cand;
    }
    return r;
}

// Classifies the discriminant of the monic cubic x^3 + A x^2 + B x + C
// relative to the magnitudes of its own terms.  This keeps near-multiple
// roots (where the terms cancel catastrophically) in the algebraic
// repeated-root branch, whose formulas are insensitive to the cancellation.
inline CubicSolution solve_cubic_full(const CubicCoeffs& c) {
    if (c.c3 == 0.0) throw input_error("leading cubic coefficient is zero");
    const double A = c.c2 / c.c3;
    const double B = c.c1 / c.c3;
    const double C = c.c0 / c.c3;

    const double t1 = 18.0 * A * B * C;
    const double t2 = -4.0 * A * A * A * C;
    const double t3 = A * A * B * B;
    const double t4 = -4.0 * B * B * B;
    const double t5 = -27.0 * C * C;
    const double disc = t1 + t2 + t3 + t4 + t5;
    const double disc_scale =
        std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);

    // depressed form: x = t - A/3,  t^3 + p t + q
    const double p = B - A * A / 3.0;
    const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
    const double shift = -A / 3.0;

    constexpr double kDiscTol = 1e-11;
    constexpr double kPTol = 1e-11;

    CubicSolution out;
    std::vector<double>& roots = out.roots;

    if (disc_scale == 0.0) {
        // A = B = C = 0: triple root at the origin
        roots.push_back(shift);
        out.n_real_with_multiplicity = 3;
    } else if (disc > kDiscTol * disc_scale) {
        // three distinct real roots (trigonometric method; p < 0 here)
        const double mp = std::sqrt(std::max(0.0, -p / 3.0));
        const double mag = 2.0 * mp;
        double arg = mp > 0.0 ? 3.0 * q / (2.0 * p * mp) : 0.0; // cos(3 theta)
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        constexpr double two_thirds_pi = 2.0943951023931953;
        for (int k = 0; k < 3; ++k)
            roots.push_back(mag * std::cos(theta - two_thirds_pi * k) + shift);
        out.n_real_with_multiplicity = 3;
    } else if (disc < -kDiscTol * disc_scale) {
        // one real root (Cardano with a cancellation-free cube-root pairing)
        const double D = std::max(0.0, (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0));
        const double sq = std::sqrt(D);
        const double u3 = q >= 0.0 ? -q / 2.0 - sq : -q / 2.0 + sq;
        double t = 0.0;
        if (u3 != 0.0) {
            const double u = std::cbrt(u3);
            t = u - p / (3.0 * u); // the conjugate cube root is -p/(3u)
        }
        roots.push_back(t + shift);
        out.n_real_with_multiplicity = 1;
    } else {
        // repeated roots: triple at t = 0 when p also vanishes, otherwise a
        // double root at -3q/(2p) and a simple root at 3q/p
        const double p_scale = std::abs(B) + A * A / 3.0;
        if (p_scale == 0.0 || std::abs(p) <= kPTol * p_scale) {
            roots.push_back(shift);
        } else {
            roots.push_back(-3.0 * q / (2.0 * p) + shift);
            roots.push_back(3.0 * q / p + shift);
        }
        out.n_real_with_multiplicity = 3;
    }

    for (double& r : roots) r = polish_root(c, r);
    std::sort(roots.begin(), roots.end());

    // collapse numerically coincident roots, keeping the better residual
    std::vector<double> distinct;
    for (double r : roots) {
        if (!distinct.empty() &&
            std::abs(r - distinct.back()) <= 1e-7 * std::max({1.0, std::abs(r), std::abs(distinct.back())})) {
            if (std::abs(c.eval(r)) < std::abs(c.eval(distinct.back()))) distinct.back() = r;
        } else {
            distinct.push_back(r);
        }
    }
    out.roots = std::move(distinct);
    return out;
}

} // namespace detail

// Real roots of the cubic, multiplicity collapsed, ascending.
inline std::vector<double> solve_cubic(const CubicCoeffs& c) {
    return detail::solve_cubic_full(c).roots;
}

// ============================================================
// fits
// ============================================================

inline QuarticFit fit_lq(const MomentSet& m) {
    const CubicCoeffs cubic = foc_cubic(m);
    const detail::CubicSolution sol = detail::solve_cubic_full(cubic);

    QuarticFit fit;
    fit.n_real_roots = sol.n_real_with_multiplicity;
    fit.solver_path = sol.n_real_with_multiplicity == 1 ? SolverPath::closed_form_single_root
                                                        : SolverPath::three_roots_argmin;
    for (double b : sol.roots) {
        QuarticFit::CriticalPoint cp;
        cp.b = b;
        cp.second_derivative = (3.0 * m.mu40 * b - 6.0 * m.mu31) * b + 3.0 * m.mu22;
        cp.loss = quartic_loss(m, b);
        fit.critical_points.push_back(cp);
    }

    // argmin with a deterministic tie-break: smaller |b|, then smaller b
    std::size_t best = 0;
    for (std::size_t i = 1; i < fit.critical_points.size(); ++i) {
        const auto& a = fit.critical_points[i];
        const auto& b = fit.critical_points[best];
        const double tol = 1e-12 * std::max({1.0, std::abs(a.loss), std::abs(b.loss)});
        if (a.loss < b.loss - tol) {
            best = i;
        } else if (std::abs(a.loss - b.loss) <= tol) {
            if (std::abs(a.b) < std::abs(b.b) || (std::abs(a.b) == std::abs(b.b) && a.b < b.b))
                best = i;
        }
    }
    fit.b_lq = fit.critical_points[best].b;
    fit.loss_at_min = fit.critical_points[best].loss;
    const double b_cubed = std::abs(fit.b_lq * fit.b_lq * fit.b_lq);
    fit.residual_foc =
        std::abs(cubic.eval(fit.b_lq)) / (cubic.max_abs_coeff() * std::max(1.0, b_cubed));
    return fit;
}

// Fit from pairs; loss_at_min is re-evaluated on the data residuals, which
// is exact near perfect fits where the polynomial form cancels
// catastrophically, and nonnegative by construction.
inline QuarticFit fit_lq(const BivariatePairs& p) {
    const MomentSet m = compute_moments(p);
    QuarticFit fit = fit_lq(m);
    double loss = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) {
        const double r = p.y[i] - fit.b_lq * p.x[i];
        const double r2 = r * r;
        loss += r2 * r2;
    }
    fit.loss_at_min = loss / static_cast<double>(p.n);
    return fit;
}

inline double fit_ls(const MomentSet& m) {
    if (!(m.mu20 > 0.0)) throw numeric_error("degenerate x: mu20 must be positive");
    return m.mu11 / m.mu20;
}

// Median of all pairwise slopes (y_j - y_i) / (x_j - x_i), ties in x skipped.
inline double fit_theil_sen(const BivariatePairs& p) {
    if (p.n < 2) throw input_error("need at least 2 pairs for the pairwise-slope median");
    std::vector<double> slopes;
    slopes.reserve(p.n * (p.n - 1) / 2);
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = i + 1; j < p.n; ++j) {
            const double dx = p.x[j] - p.x[i];
            if (dx == 0.0) continue;
            slopes.push_back((p.y[j] - p.y[i]) / dx);
        }
    if (slopes.empty()) throw numeric_error("all x values identical: no pairwise slopes");
    const std::size_t m = slopes.size();
    std::nth_element(slopes.begin(), slopes.begin() + m / 2, slopes.end());
    const double upper = slopes[m / 2];
    if (m % 2 == 1) return upper;
    const double lower = *std::max_element(slopes.begin(), slopes.begin() + m / 2);
    return 0.5 * (lower + upper);
}

// ============================================================
// closed-form cross-check
// ============================================================

// Direct evaluation of the single-root closed form via principal complex
// branches.  `value` uses mu40 inside the first radicand, which is the
// reading consistent with the first-order-condition cubic (it reduces to the
// standard Cardano root); `printed_value` substitutes mu04 there, and
// `consistent` records whether the two readings agree within 1e-9.
struct ClosedFormSlope {
    double value = 0;
    double printed_value = 0;
    bool consistent = false;
};

namespace detail {

inline std::complex<double> closed_form_reading(const MomentSet& m, double mu_spot) {
    using cplx = std::complex<double>;
    const double P = -9.0 * m.mu31 * m.mu31 + 9.0 * m.mu22 * mu_spot;
    const double Q = 54.0 * m.mu31 * m.mu31 * m.mu31 -
                     81.0 * m.mu22 * m.mu31 * m.mu40 + 27.0 * m.mu13 * m.mu40 * m.mu40;
    const cplx S = std::sqrt(cplx(4.0 * P * P * P + Q * Q, 0.0));
    const cplx W = std::pow(cplx(Q, 0.0) + S, 1.0 / 3.0);
    const double lead = m.mu31 / m.mu40;
    if (std::abs(W) == 0.0) return cplx(lead, 0.0); // P = Q = 0: triple root
    const double cbrt2 = std::cbrt(2.0);
    return cplx(lead, 0.0) - cbrt2 * P / (3.0 * m.mu40 * W) + W / (3.0 * cbrt2 * m.mu40);
}

} // namespace detail

inline ClosedFormSlope closed_form_lq(const MomentSet& m) {
    if (!(m.mu40 > 0.0)) throw numeric_error("degenerate x: mu40 must be positive");
    const std::complex<double> a = detail::closed_form_reading(m, m.mu40);
    const std::complex<double> b = detail::closed_form_reading(m, m.mu04);
    ClosedFormSlope r;
    r.value = a.real();
    r.printed_value = b.real();
    r.consistent = std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
    return r;
}

} // namespace lqreg
