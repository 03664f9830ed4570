// Acceptance gate: every release-blocking numerical guarantee in one binary.
//
// Each check prints exactly one PASS/FAIL line; the process exit code is the
// number of failed checks. Tolerances are part of the contract and must not
// be loosened to make a failing build green.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lqreg/capm.hpp"
#include "lqreg/cli.hpp"
#include "lqreg/lqreg.hpp"

namespace {

using namespace lqreg;

int g_failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
    std::printf("%s  %-38s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    if (!pass) ++g_failures;
}

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// random sample from the synthetic generators, cycling through every kind
BivariatePairs random_instance(std::uint64_t seed) {
    static const GeneratorKind kinds[] = {
        GeneratorKind::bivariate_normal, GeneratorKind::coskew_left_pos,
        GeneratorKind::coskew_right_pos, GeneratorKind::coskew_neg,
        GeneratorKind::cokurt_lepto_pos, GeneratorKind::cokurt_platy_pos,
        GeneratorKind::cokurt_neg,       GeneratorKind::outlier_contaminated,
    };
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    GeneratorSpec spec;
    spec.kind = kinds[seed % 8];
    spec.n = 20 + static_cast<std::size_t>(u01(rng) * 481); // 20..500
    spec.sigma_x = 0.5 + 1.5 * u01(rng);
    spec.sigma_y = 0.5 + 1.5 * u01(rng);
    spec.rho = -0.9 + 1.8 * u01(rng);
    spec.contamination = default_contamination(spec.kind);
    spec.seed = rng();
    return generate(spec);
}

// ------------------------------------------------------------------
// 1. slope-gap formula at the published anchor values
// ------------------------------------------------------------------
void check_delta_anchors() {
    const double d1 = delta_pct(1.625, 1.051);
    const double d2 = delta_pct(14.936, 15.568);
    const bool pass = std::abs(d1 - (-35.32)) <= 0.05 && std::abs(d2 - 4.23) <= 0.05;
    char buf[128];
    std::snprintf(buf, sizeof buf, "delta(1.625,1.051)=%.4f  delta(14.936,15.568)=%.4f", d1, d2);
    report("delta formula anchors", pass, buf);
}

// ------------------------------------------------------------------
// 2. population Gaussian reduction on the 15-point (sigma, rho) grid
// ------------------------------------------------------------------
void check_gaussian_population() {
    double worst_b = 0, worst_res = 0;
    for (double s : {0.5, 1.0, 2.0}) {
        for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
            const MomentSet m = bivariate_normal_moments(s, s, rho);
            const QuarticFit fit = fit_lq(m);
            const double target = rho * s / s;
            worst_b = std::max(worst_b, std::abs(fit.b_lq - target));
            worst_res = std::max(worst_res, fit.residual_foc);
        }
    }
    const bool pass = worst_b <= 1e-10 && worst_res <= 1e-12;
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |b-rho·sy/sx|=%.3e  max foc residual=%.3e", worst_b,
                  worst_res);
    report("gaussian population reduction", pass, buf);
}

// ------------------------------------------------------------------
// 3. sampled Gaussian reduction at n = 200,000
// ------------------------------------------------------------------
void check_gaussian_sampled() {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::bivariate_normal;
    spec.n = 200000;
    spec.sigma_x = 1.0;
    spec.sigma_y = 1.0;
    spec.rho = 0.6;
    spec.contamination = 0.0;
    spec.seed = 20240615;
    const MomentSet m = compute_moments(generate(spec));
    const double b_ls = fit_ls(m);
    const double b_lq = fit_lq(m).b_lq;
    const bool pass = std::abs(b_lq - b_ls) <= 0.02 && std::abs(b_ls - 0.6) <= 0.02;
    char buf[128];
    std::snprintf(buf, sizeof buf, "b_ls=%.5f  b_lq=%.5f  |b_lq-b_ls|=%.5f", b_ls, b_lq,
                  std::abs(b_lq - b_ls));
    report("sampled gaussian reduction", pass, buf);
}

// ------------------------------------------------------------------
// 4. analytic solver vs. brute-force grid oracle, 1,000 instances
// ------------------------------------------------------------------
void check_oracle_equivalence() {
    int failures = 0;
    double worst = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const MomentSet m = compute_moments(random_instance(i));
        const double b_lq = fit_lq(m).b_lq;
        const double b_ls = fit_ls(m);
        const double half = 10.0 * std::max(1.0, std::abs(b_ls));
        const double oracle = oracle_grid_min(m, b_ls, half, 1e-3);
        const double gap = std::abs(b_lq - oracle);
        worst = std::max(worst, gap);
        if (gap > 1e-6) ++failures;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "failures=%d/1000  worst gap=%.3e", failures, worst);
    report("grid oracle equivalence", failures == 0, buf);
}

// ------------------------------------------------------------------
// 5. global-minimum certificate against random probes
// ------------------------------------------------------------------
void check_global_minimum() {
    std::mt19937_64 rng(777);
    int violations = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const MomentSet m = compute_moments(random_instance(5000 + i));
        const double b_lq = fit_lq(m).b_lq;
        const double l_min = quartic_loss(m, b_lq);
        const double s = std::max(1.0, std::abs(b_lq));
        for (int k = 0; k < 10000; ++k) {
            const double b = b_lq + (u01(rng) - 0.5) * 20.0 * s;
            if (quartic_loss(m, b) < l_min * (1.0 - 1e-12)) ++violations;
        }
        if (quartic_loss(m, fit_ls(m)) < l_min * (1.0 - 1e-12)) ++violations;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "violations=%d over 200x10000 probes", violations);
    report("global-minimum certificate", violations == 0, buf);
}

// ------------------------------------------------------------------
// 6. scale equivariance: b(ax, cy) = (c/a) b(x, y)
// ------------------------------------------------------------------
void check_scale_equivariance() {
    double worst = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const BivariatePairs p = random_instance(9000 + i);
        const double b = fit_lq(compute_moments(p)).b_lq;
        for (double a : {0.01, 1.0, 100.0}) {
            for (double c : {0.01, 1.0, 100.0}) {
                BivariatePairs q = p;
                for (double& v : q.x) v *= a;
                for (double& v : q.y) v *= c;
                q.x_scale *= a;
                q.y_scale *= c;
                const double scaled = fit_lq(compute_moments(q)).b_lq;
                const double target = b * c / a;
                const double err =
                    std::abs(scaled - target) / std::max(1.0, std::abs(target));
                worst = std::max(worst, err);
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst relative error=%.3e", worst);
    report("scale equivariance", worst <= 1e-9, buf);
}

// ------------------------------------------------------------------
// 7. perfect-fit recovery at n = 101
// ------------------------------------------------------------------
void check_perfect_fit() {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 100; ++i) {
        const double x = -1.0 + 0.02 * i;
        xs.push_back(x);
        ys.push_back(3.7 * x);
    }
    const QuarticFit fit = fit_lq(make_pairs_from_series(xs, ys));
    const bool pass = std::abs(fit.b_lq - 3.7) <= 1e-9 && fit.loss_at_min <= 1e-18 &&
                      fit.loss_at_min >= 0.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "b=%.12f  loss=%.3e", fit.b_lq, fit.loss_at_min);
    report("perfect-fit recovery", pass, buf);
}

// ------------------------------------------------------------------
// 8. hand-computed fixtures
// ------------------------------------------------------------------
void check_fixtures() {
    const QuarticFit triple = fit_lq(make_pairs_from_series({-1, 0, 1}, {-2, 0, 2}));
    const QuarticFit single = fit_lq(make_pairs_from_series({-1, 0, 1}, {-1, 1, 0}));
    const bool pass = std::abs(triple.b_lq - 2.0) <= 1e-9 && triple.n_real_roots == 3 &&
                      std::abs(single.b_lq - 0.5) <= 1e-9 && single.n_real_roots == 1;
    char buf[128];
    std::snprintf(buf, sizeof buf, "triple: b=%.10f roots=%d  single: b=%.10f roots=%d",
                  triple.b_lq, triple.n_real_roots, single.b_lq, single.n_real_roots);
    report("hand-computed fixtures", pass, buf);
}

// ------------------------------------------------------------------
// 9. co-moment identities: swap symmetry, scale invariance, Gaussian kappas
// ------------------------------------------------------------------
void check_comoment_identities() {
    int violations = 0;

    // swap symmetry over random draws
    for (std::uint64_t i = 0; i < 200; ++i) {
        BivariatePairs p = random_instance(12000 + i);
        BivariatePairs q = p;
        std::swap(q.x, q.y);
        std::swap(q.x_scale, q.y_scale);
        const MomentSet a = compute_moments(p);
        const MomentSet b = compute_moments(q);
        const auto close = [](double u, double v) {
            return std::abs(u - v) <= 1e-12 * std::max({1.0, std::abs(u), std::abs(v)});
        };
        if (!close(a.mu21, b.mu12) || !close(a.mu12, b.mu21) || !close(a.mu31, b.mu13) ||
            !close(a.mu13, b.mu31) || !close(a.mu22, b.mu22) || !close(a.mu40, b.mu04))
            ++violations;
    }

    // lambda scale invariance
    for (std::uint64_t i = 0; i < 100; ++i) {
        const BivariatePairs p = random_instance(13000 + i);
        const CoMomentReport base = comoment_report(compute_moments(p));
        for (double a : {0.01, 100.0}) {
            BivariatePairs q = p;
            for (double& v : q.x) v *= a;
            for (double& v : q.y) v *= 3.0;
            q.x_scale *= a;
            q.y_scale *= 3.0;
            const CoMomentReport r = comoment_report(compute_moments(q));
            const auto invariant = [](double u, double v) {
                return std::abs(u - v) <= 1e-9 * std::max({1.0, std::abs(u), std::abs(v)});
            };
            if (!invariant(base.lambda21, r.lambda21) || !invariant(base.lambda12, r.lambda12) ||
                !invariant(base.lambda31, r.lambda31) || !invariant(base.lambda13, r.lambda13) ||
                !invariant(base.lambda22, r.lambda22) || !invariant(base.rho, r.rho))
                ++violations;
        }
    }

    // kappas vanish identically on bivariate normal population moments
    for (double sx : {0.5, 1.0, 2.0})
        for (double sy : {0.5, 1.0, 2.0})
            for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
                const CoMomentReport r = comoment_report(bivariate_normal_moments(sx, sy, rho));
                const double sc = std::max(1.0, sx * sx * sy * sy);
                if (std::abs(r.kappa13) > 1e-12 * sc || std::abs(r.kappa31) > 1e-12 * sc ||
                    std::abs(r.kappa22) > 1e-12 * sc)
                    ++violations;
            }

    char buf[128];
    std::snprintf(buf, sizeof buf, "violations=%d", violations);
    report("co-moment identities", violations == 0, buf);
}

// ------------------------------------------------------------------
// 10. pipeline throughput and byte determinism (36 assets x 995 rows)
// ------------------------------------------------------------------
std::string render_panel_report(const PricePanel& panel) {
    const PanelReport rep = build_report(panel, AnalysisOptions{Transform::levels});
    return lqreg::cli::render_report(rep, lqreg::cli::OutputFormat::csv);
}

void check_pipeline() {
    PricePanel panel;
    panel.market_name = "mkt";
    std::mt19937_64 rng(31415);
    const std::size_t rows = 995;
    for (std::size_t r = 0; r < rows; ++r) panel.labels.push_back("t" + std::to_string(r));
    std::vector<double> mkt(rows);
    for (double& v : mkt) v = 2.0 * u01(rng) - 1.0;
    panel.columns.push_back({"mkt", mkt});
    for (int a = 0; a < 36; ++a) {
        std::vector<double> col(rows);
        const double beta = -1.0 + 0.08 * a;
        for (std::size_t r = 0; r < rows; ++r)
            col[r] = beta * mkt[r] + 0.3 * (2.0 * u01(rng) - 1.0);
        panel.columns.push_back({"a" + std::to_string(a), std::move(col)});
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::string first = render_panel_report(panel);
    const auto t1 = std::chrono::steady_clock::now();
    const std::string second = render_panel_report(panel);
    const double seconds = std::chrono::duration<double>(t1 - t0).count();

    const bool pass = seconds < 1.0 && first == second && !first.empty();
    char buf[128];
    std::snprintf(buf, sizeof buf, "build_report time=%.3fs  deterministic=%s", seconds,
                  first == second ? "yes" : "NO");
    report("pipeline throughput + determinism", pass, buf);
}

} // namespace

int main() {
    std::printf("acceptance gate\n---------------\n");
    check_delta_anchors();
    check_gaussian_population();
    check_gaussian_sampled();
    check_oracle_equivalence();
    check_global_minimum();
    check_scale_equivariance();
    check_perfect_fit();
    check_fixtures();
    check_comoment_identities();
    check_pipeline();
    std::printf("---------------\n%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures;
}
