// Compares the least-squares, least-quartic, and Theil-Sen slopes on
// synthetic market/asset samples with controlled co-moment structure.
//
//   ./slope_comparison [seed]

#include <cstdio>
#include <cstdlib>

#include "lqreg/lqreg.hpp"

using namespace lqreg;

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;

    const GeneratorKind kinds[] = {
        GeneratorKind::bivariate_normal, GeneratorKind::coskew_neg,
        GeneratorKind::cokurt_lepto_pos, GeneratorKind::outlier_contaminated,
    };

    std::printf("%-16s %10s %10s %10s %10s %10s\n", "generator", "b_ls", "b_lq", "b_ts",
                "delta_pct", "kappa22");
    for (GeneratorKind kind : kinds) {
        GeneratorSpec spec;
        spec.kind = kind;
        spec.n = 20000;
        spec.rho = 0.6;
        spec.contamination = default_contamination(kind);
        spec.seed = seed;

        const BivariatePairs pairs = generate(spec);
        const MomentSet m = compute_moments(pairs);
        const CoMomentReport rep = comoment_report(m);

        const double b_ls = fit_ls(m);
        const double b_lq = fit_lq(m).b_lq;
        const double b_ts = fit_theil_sen(pairs);
        const double gap = delta_defined(b_ls, b_lq) ? delta_pct(b_ls, b_lq) : 0.0;

        std::printf("%-16s %10.5f %10.5f %10.5f %10.4f %10.5f\n", kind_name(kind), b_ls, b_lq,
                    b_ts, gap, rep.kappa22);
    }

    std::printf("\nOn a clean Gaussian sample all three slopes agree; the quartic\n"
                "criterion separates from least squares once the co-moment structure\n"
                "leaves the Gaussian family.\n");
    return 0;
}
