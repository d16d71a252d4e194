#include <algorithm>

#include "spmac/capacity.hpp"
#include "spmac/info.hpp"
#include "spmac/parallel.hpp"

namespace spmac {

ClassicalSweep classical_region_sweep(const std::vector<double>& lambda_grid) {
    require(!lambda_grid.empty(), "classical_region_sweep: empty grid");
    ClassicalSweep sweep;
    sweep.points.resize(lambda_grid.size());

    parallel_for(static_cast<long>(lambda_grid.size()), [&](long idx) {
        double lambda = lambda_grid[idx];
        require(lambda >= 0.0 && lambda <= 1.0, "classical_region_sweep: lambda outside [0,1]");
        RealVec w(2);
        w << lambda, 1.0 - lambda;
        TransitionMatrix tm = canonical_classical_mac(w);
        // Deterministic uniform start with a prior-movement stop: the corner
        // points depend on the maximizing prior, which needs tighter
        // convergence than the rate-sum value itself.
        BaOptions opts;
        opts.restarts = 0;
        opts.mac_tolerance = 1e-13;
        opts.prior_tolerance = 1e-12;
        CapacityResult cap = ba_mac_rate_sum(tm, opts);
        RateRegion rr = rate_region_two_sender(tm, cap.priors[0], cap.priors[1]);
        SweepPoint pt;
        pt.lambda = lambda;
        pt.rate_sum = cap.value_bits;
        pt.r1_star = rr.r1_star;
        pt.r2_star = rr.r2_star;
        pt.r1_dstar = rr.r1_dstar;
        pt.r2_dstar = rr.r2_dstar;
        sweep.points[idx] = pt;
    });

    // Outer boundary of the union: the (R1*, R2*) curve covers lambda >= 1/2
    // down to the symmetric point, the (R1**, R2**) curve covers lambda <= 1/2.
    std::vector<SweepPoint> sorted = sweep.points;
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.lambda > b.lambda; });
    for (const auto& pt : sorted)
        if (pt.lambda >= 0.5) sweep.union_boundary.emplace_back(pt.r1_star, pt.r2_star);
    for (const auto& pt : sorted)
        if (pt.lambda < 0.5) sweep.union_boundary.emplace_back(pt.r1_dstar, pt.r2_dstar);
    return sweep;
}

}  // namespace spmac
