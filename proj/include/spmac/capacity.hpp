#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spmac/info.hpp"
#include "spmac/mac.hpp"

namespace spmac {

struct CapacityResult {
    double value_bits = 0.0;
    std::vector<RealVec> priors;  // one per sender
    long iterations = 0;
    bool converged = false;
    double residual = 0.0;                  // final improvement / optimality gap
    std::optional<double> upper_bound_bits; // flattened point-to-point bound (MAC solver)

    std::string to_json() const;
};

struct BaOptions {
    double tolerance = 1e-10;   // point-to-point optimality gap, bits
    long max_iterations = 100000;
    double mac_tolerance = 1e-9;  // rate-sum improvement per sweep, bits
    // When positive, also iterate until every prior component moves less than
    // this between sweeps (pins the argmax, not just the value).
    double prior_tolerance = 0.0;
    int restarts = 16;
    std::uint64_t seed = 1;
};

/// Blahut-Arimoto capacity of a point-to-point channel (the MAC is flattened
/// to a single sender if needed). Converged means the capacity optimality gap
/// max_x D(x) - sum_x r(x) D(x) fell below the tolerance.
CapacityResult ba_point_to_point(const TransitionMatrix& tm, const BaOptions& opts = {});

/// Largest I(X_1...X_N : Y) over product priors via alternating per-sender
/// Blahut-Arimoto style updates, multi-started from seeded random priors.
/// Also reports ba_point_to_point of the flattened channel as an upper bound.
CapacityResult ba_mac_rate_sum(const TransitionMatrix& tm, const BaOptions& opts = {});

/// Exhaustive product-prior grid oracle for small instances (N <= 2,
/// alphabets <= 3). `resolution` is the number of points per free parameter.
double grid_oracle_rate_sum(const TransitionMatrix& tm, int resolution = 401);

}  // namespace spmac
