// Renders the quartic loss around its minimum as a coarse ASCII profile.
//
// A perhaps surprising fact shapes what these profiles can look like: for
// moments computed from data, the loss mean((y - bx)^4) is always convex in
// b (its second derivative is 12 mean(x^2 (y - bx)^2) >= 0), so the profile
// has a single valley no matter how adversarial the sample is.  Equivalently,
// Cauchy-Schwarz gives mu31^2 <= mu40 mu22, which pins the first-order cubic
// to one real root.  A three-valley landscape needs a raw MomentSet that no
// sample can produce; the last panel shows one to exercise the argmin path.
//
//   ./loss_landscape [seed]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "lqreg/lqreg.hpp"

using namespace lqreg;

namespace {

void profile(const char* title, const MomentSet& m) {
    const QuarticFit fit = fit_lq(m);
    std::printf("%s\n  b_lq=%.6f  critical points=%zu  foc residual=%.2e\n", title, fit.b_lq,
                fit.critical_points.size(), fit.residual_foc);

    const double lo = fit.critical_points.front().b - 1.0;
    const double hi = fit.critical_points.back().b + 1.0;
    const int cols = 61;
    std::vector<double> loss(cols);
    for (int i = 0; i < cols; ++i)
        loss[i] = quartic_loss(m, lo + (hi - lo) * i / (cols - 1));
    const double lmin = *std::min_element(loss.begin(), loss.end());
    const double lmax = *std::max_element(loss.begin(), loss.end());

    for (int row = 7; row >= 0; --row) {
        std::string line(cols, ' ');
        for (int i = 0; i < cols; ++i) {
            const double t = (loss[i] - lmin) / (lmax - lmin + 1e-300);
            if (static_cast<int>(t * 7.999) == row) line[i] = '*';
        }
        std::printf("  |%s\n", line.c_str());
    }
    std::printf("  +%s\n   b in [%.3f, %.3f]\n\n", std::string(cols, '-').c_str(), lo, hi);
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

    GeneratorSpec spec;
    spec.kind = GeneratorKind::coskew_neg;
    spec.n = 4000;
    spec.rho = 0.6;
    spec.contamination = default_contamination(spec.kind);
    spec.seed = seed;
    profile("contaminated sample (single minimum)", compute_moments(generate(spec)));

    // Even two opposing slope clusters cannot bend the loss into two valleys:
    // convexity wins and the fit lands with the fourth-moment-heavy cluster.
    std::vector<double> xs, ys;
    for (int i = 0; i < 8; ++i) {
        const double t = 1.5 + 0.1 * i;
        xs.insert(xs.end(), {t, -t});
        ys.insert(ys.end(), {2.0 * t, -2.0 * t});
    }
    for (int i = 0; i < 12; ++i) {
        const double t = 0.3 + 0.05 * i;
        xs.insert(xs.end(), {t, -t});
        ys.insert(ys.end(), {-2.0 * t, 2.0 * t});
    }
    profile("two slope clusters: still one valley (loss is convex in b)",
            compute_moments(make_pairs_from_series(xs, ys)));

    // Hand-built moments with first-order cubic (b-1)(b-2)(b-4); here
    // mu31^2 > mu40 mu22, which no data set can satisfy.
    MomentSet synthetic;
    synthetic.n = 0;
    synthetic.mu20 = synthetic.mu02 = 1.0;
    synthetic.sigma_x = synthetic.sigma_y = 1.0;
    synthetic.mu40 = 1.0;
    synthetic.mu31 = 7.0 / 3.0;
    synthetic.mu22 = 14.0 / 3.0;
    synthetic.mu13 = 8.0;
    synthetic.mu04 = 40.0;
    profile("hand-built moment set (three critical points, argmin picks b=4)", synthetic);
    return 0;
}
