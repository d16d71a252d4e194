#pragma once

#include <vector>

#include "spmac/mac.hpp"
#include "spmac/quantum.hpp"

namespace spmac {

/// Joint distribution p(x_1 ... x_N, y) stored as (flat joint input) x y.
class JointDistribution {
  public:
    JointDistribution(std::vector<int> input_sizes, RealMat joint);

    /// p(x) * p(y|x) from a channel and a flattened joint prior.
    static JointDistribution from_channel(const TransitionMatrix& tm, const RealVec& joint_prior);

    const std::vector<int>& input_sizes() const { return input_sizes_; }
    const RealMat& joint() const { return joint_; }  // rows: flat x, cols: y

    /// Marginal over a subset of senders (by index) jointly with Y.
    RealMat marginal_with_output(const std::vector<int>& sender_subset) const;
    RealVec output_marginal() const;
    RealVec input_marginal() const;  // over flat joint inputs

  private:
    std::vector<int> input_sizes_;
    RealMat joint_;
};

double entropy(const RealVec& dist);

/// I(X_S : Y) for a subset S of senders (all senders if empty).
double mutual_information(const JointDistribution& joint, const std::vector<int>& senders = {});

/// I(X_S : Y | X_T) = I(X_{S u T} : Y) - I(X_T : Y).
double conditional_mutual_information(const JointDistribution& joint, const std::vector<int>& s,
                                      const std::vector<int>& given);

/// Convenience: I(X:Y) of a channel under a flattened joint input prior.
double channel_mutual_information(const TransitionMatrix& tm, const RealVec& joint_prior);

/// Classical-quantum ensemble {p(x), sigma_x}.
struct CqEnsemble {
    RealVec priors;
    std::vector<DensityOperator> states;
};

/// Von Neumann entropy in bits; eigenvalues below 1e-12 are treated as zero.
double von_neumann_entropy(const Mat& rho);

/// Holevo information  chi = S(sum_x p_x sigma_x) - sum_x p_x S(sigma_x).
double holevo_chi(const CqEnsemble& ensemble);

/// Two-sender rate-region data for a fixed product prior.
struct RateRegion {
    double i1_given_2;  // I(X1:Y|X2)
    double i2_given_1;  // I(X2:Y|X1)
    double i_joint;     // I(X1X2:Y)
    // Pentagon corner points.
    double r1_star, r2_star;    // (I(X1:Y), I(X2:Y|X1))
    double r1_dstar, r2_dstar;  // (I(X1:Y|X2), I(X2:Y))
    RealVec prior1, prior2;
};

RateRegion rate_region_two_sender(const TransitionMatrix& tm, const RealVec& prior1,
                                  const RealVec& prior2);

struct SweepPoint {
    double lambda;
    double rate_sum;  // max_{product priors} I(X1X2:Y)
    double r1_star, r2_star;
    double r1_dstar, r2_dstar;
};

struct ClassicalSweep {
    std::vector<SweepPoint> points;
    // Sampled outer boundary of the union of achievable rate pairs,
    // ordered from (R1,R2) = (1,0) to (0,1).
    std::vector<std::pair<double, double>> union_boundary;
};

/// Sweeps the canonical two-sender classical MAC over source weights lambda,
/// maximizing the rate sum over product priors at each grid point.
ClassicalSweep classical_region_sweep(const std::vector<double>& lambda_grid);

}  // namespace spmac
