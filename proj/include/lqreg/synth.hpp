#pragma once

// Seeded synthetic generators for co-moment typologies, plus a slow grid
// oracle for the least-quartic minimizer.
//
// Randomness: std::mt19937_64 (bit-exact by the C++ standard) with explicit
// seeding; uniforms are mapped as (word >> 11) * 2^-53 and normals come from
// the Box-Muller transform.  No std::*_distribution is used anywhere, so the
// stream never depends on implementation-defined internals: the same spec
// (including seed) always yields the same sample.
//
// Every non-normal kind is a mixture of a dominant correlated Gaussian core
// (weight 1 - c) and one tail component (weight c) whose mean is placed in
// the quadrant(s) that produce the named co-moment signature:
//
//   coskew_left_pos    tail at (-4 sx, +3 sy)            lambda21 > 0
//   coskew_right_pos   tail at (+4 sx, +3 sy)            lambda21 > 0
//   coskew_neg         tail at (+4 sx, -3 sy)            lambda21 < 0
//   cokurt_lepto_pos   tails split over +-(4 sx, 4 sy)   kappa22 > 0 (aligned butterfly)
//   cokurt_platy_pos   tail at (+4 sx, +4 sy), heavy c   kappa22 < 0, rho > 0 (diagonal bimodal)
//   cokurt_neg         tail at (+4 sx, -4 sy), heavy c   kappa22 < 0, rho < 0 (anti-diagonal)
//   outlier_contaminated  isotropic 6-sigma noise at 0   lambda22 above the normal baseline
//
// Tail components have standard deviation sigma/2 per axis (6 sigma for the
// outlier kind) and no internal correlation.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lqreg/errors.hpp"
#include "lqreg/moments.hpp"
#include "lqreg/sample.hpp"
#include "lqreg/solver.hpp"

namespace lqreg {

enum class GeneratorKind {
    bivariate_normal,
    coskew_left_pos,
    coskew_right_pos,
    coskew_neg,
    cokurt_lepto_pos,
    cokurt_platy_pos,
    cokurt_neg,
    outlier_contaminated,
};

inline const char* kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::bivariate_normal: return "bivariate_normal";
        case GeneratorKind::coskew_left_pos: return "coskew_left_pos";
        case GeneratorKind::coskew_right_pos: return "coskew_right_pos";
        case GeneratorKind::coskew_neg: return "coskew_neg";
        case GeneratorKind::cokurt_lepto_pos: return "cokurt_lepto_pos";
        case GeneratorKind::cokurt_platy_pos: return "cokurt_platy_pos";
        case GeneratorKind::cokurt_neg: return "cokurt_neg";
        case GeneratorKind::outlier_contaminated: return "outlier_contaminated";
    }
    return "unknown";
}

inline GeneratorKind parse_kind(const std::string& name) {
    for (GeneratorKind k : {GeneratorKind::bivariate_normal, GeneratorKind::coskew_left_pos,
                            GeneratorKind::coskew_right_pos, GeneratorKind::coskew_neg,
                            GeneratorKind::cokurt_lepto_pos, GeneratorKind::cokurt_platy_pos,
                            GeneratorKind::cokurt_neg, GeneratorKind::outlier_contaminated})
        if (name == kind_name(k)) return k;
    throw input_error("unknown generator kind: " + name);
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::bivariate_normal;
    std::size_t n = 0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    double rho = 0.0;          // correlation of the Gaussian core
    double contamination = 0.0; // tail weight in [0, 0.5]; 0 selects the kind default
    std::uint64_t seed = 0;
};

// Tail weight that guarantees the documented co-moment signs; used whenever
// the spec leaves contamination at 0.
inline double default_contamination(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::bivariate_normal: return 0.0;
        case GeneratorKind::coskew_left_pos:
        case GeneratorKind::coskew_right_pos:
        case GeneratorKind::coskew_neg:
        case GeneratorKind::cokurt_lepto_pos: return 0.10;
        case GeneratorKind::cokurt_platy_pos:
        case GeneratorKind::cokurt_neg: return 0.35;
        case GeneratorKind::outlier_contaminated: return 0.05;
    }
    return 0.0;
}

namespace detail {

inline double unit_uniform(std::mt19937_64& eng) { // [0, 1)
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

struct NormalPair {
    double z1, z2;
};

inline NormalPair box_muller(std::mt19937_64& eng) {
    const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    const double u2 = unit_uniform(eng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586;
    return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

} // namespace detail

// Draws n points and returns them centered.  Draw order per point: one
// selector uniform (mixture kinds only), then one Box-Muller pair.
inline BivariatePairs generate(const GeneratorSpec& spec) {
    if (spec.n < 5) throw input_error("generator needs n >= 5");
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_y > 0.0)) throw input_error("sigma must be positive");
    if (!(spec.rho > -1.0 && spec.rho < 1.0)) throw input_error("rho must lie in (-1, 1)");
    if (!(spec.contamination >= 0.0 && spec.contamination <= 0.5))
        throw input_error("contamination must lie in [0, 0.5]");

    const double c = spec.contamination > 0.0 ? spec.contamination
                                              : default_contamination(spec.kind);
    const double sx = spec.sigma_x, sy = spec.sigma_y;
    const double rho_c = std::sqrt(1.0 - spec.rho * spec.rho);

    std::mt19937_64 eng(spec.seed);
    std::vector<double> xs(spec.n), ys(spec.n);

    for (std::size_t i = 0; i < spec.n; ++i) {
        double mx = 0.0, my = 0.0, tx = 0.0, ty = 0.0;
        bool tail = false;
        if (spec.kind != GeneratorKind::bivariate_normal) {
            const double u = detail::unit_uniform(eng);
            tail = u < c;
            switch (spec.kind) {
                case GeneratorKind::coskew_left_pos:  mx = -4.0 * sx; my = 3.0 * sy; break;
                case GeneratorKind::coskew_right_pos: mx = 4.0 * sx;  my = 3.0 * sy; break;
                case GeneratorKind::coskew_neg:       mx = 4.0 * sx;  my = -3.0 * sy; break;
                case GeneratorKind::cokurt_lepto_pos:
                    // tail mass split evenly over the two aligned quadrants
                    mx = u < c / 2.0 ? 4.0 * sx : -4.0 * sx;
                    my = u < c / 2.0 ? 4.0 * sy : -4.0 * sy;
                    break;
                case GeneratorKind::cokurt_platy_pos: mx = 4.0 * sx; my = 4.0 * sy; break;
                case GeneratorKind::cokurt_neg:       mx = 4.0 * sx; my = -4.0 * sy; break;
                case GeneratorKind::outlier_contaminated: mx = 0.0; my = 0.0; break;
                default: break;
            }
            const bool outlier = spec.kind == GeneratorKind::outlier_contaminated;
            tx = outlier ? 6.0 * sx : 0.5 * sx;
            ty = outlier ? 6.0 * sy : 0.5 * sy;
        }
        const detail::NormalPair z = detail::box_muller(eng);
        if (tail) {
            xs[i] = mx + tx * z.z1;
            ys[i] = my + ty * z.z2;
        } else {
            xs[i] = sx * z.z1;
            ys[i] = sy * (spec.rho * z.z1 + rho_c * z.z2);
        }
    }
    return make_pairs_from_series(std::move(xs), std::move(ys), "y", "x");
}

// Grid-scan oracle for the least-quartic minimizer: scans quartic_loss over
// [center - half_width, center + half_width] at coarse_step, then refines
// the best cell by ternary section to a bracket of width 1e-9.  Independent
// of the cubic-root solver path.
inline double oracle_grid_min(const MomentSet& m, double center, double half_width,
                              double coarse_step) {
    if (!(half_width > 0.0)) throw input_error("half_width must be positive");
    if (!(coarse_step > 0.0 && coarse_step <= half_width))
        throw input_error("coarse_step must lie in (0, half_width]");

    const double lo_edge = center - half_width;
    const std::size_t steps = static_cast<std::size_t>(2.0 * half_width / coarse_step) + 1;
    double best_b = lo_edge;
    double best_loss = quartic_loss(m, lo_edge);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double b = std::min(lo_edge + static_cast<double>(k) * coarse_step,
                                  center + half_width);
        const double l = quartic_loss(m, b);
        if (l < best_loss) {
            best_loss = l;
            best_b = b;
        }
    }

    double lo = best_b - coarse_step;
    double hi = best_b + coarse_step;
    while (hi - lo > 1e-9) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (quartic_loss(m, m1) < quartic_loss(m, m2))
            hi = m2;
        else
            lo = m1;
    }
    return 0.5 * (lo + hi);
}

} // namespace lqreg
