#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spmac/info.hpp"
#include "spmac/mac.hpp"

namespace spmac {

/// The two-sender coherence-assisted interferometer protocol in the port
/// convention of the optical setup: source (1/sqrt2, 1/2, 1/2) over paths
/// 1..3, sender 1's pi-phase plate on path 2, sender 2's on path 1, path 3
/// untouched, and which-port detection. At perfect visibility the channel is
///   p(1|10)=p(2|11)=1, p(.|00)=p(.|01)=(1/2,1/4,1/4).
struct BalancedProtocol {
    PureState initial;
    EncodingStrategy encoding;
    Povm povm;
};

BalancedProtocol two_sender_balanced_protocol();

/// Ideal balanced channel (the protocol above, evaluated exactly).
TransitionMatrix two_sender_balanced_channel();

/// Product prior achieving log2(17/8) on the balanced channel:
/// p(x1) = (2/17, 15/17) on the enabling sender, p(x2) = (1/2, 1/2).
void balanced_optimal_prior(RealVec& prior1, RealVec& prior2);
RealVec balanced_optimal_prior_joint();

/// Detection-efficiency-degraded balanced channel: every click survives with
/// probability eta, lost clicks land in outcome 0.
TransitionMatrix eta_channel(double eta);

enum class EtaPriorPolicy { kFixedReferencePrior, kOptimized };

/// Detection efficiency at which the channel stops beating one bit:
/// bisection on I(eta) = 1 (fixed prior) or max rate sum = 1 (optimized),
/// to 1e-6 in eta.
double eta_threshold(EtaPriorPolicy policy = EtaPriorPolicy::kFixedReferencePrior);

/// Interference-visibility model: independent phase diffusion in each loop.
/// The inner (Sagnac) cross term between paths 2 and 3 is scaled by v_s; the
/// outer (MZ) cross terms between path 1 and paths 2,3 are scaled by
/// v_z * v_s^{1/4} (the inner differential noise is split evenly across the
/// two inner paths, Gaussian statistics). The map is an average over random
/// phase unitaries, so columns stay normalized and entries stay in [0,1] by
/// construction.
TransitionMatrix visibility_channel(double v_sagnac, double v_mz);

/// Heralded second-order cross-correlation from coincidence counts.
double g2_from_counts(double c_iss, double c_i, double c_is, double c_is2);

/// Phase added by tilting a plane glass plate of thickness d by angle alpha.
double phase_plate_shift(double alpha, double thickness_m, double wavelength_m,
                         double refractive_index);

struct ExperimentConfig {
    double eta = 1.0;
    double v_sagnac = 0.995;
    double v_mz = 0.982;
    long counts_per_setting = 600;  // m: photons per random input bit
    long random_bits = 680;         // n: number of sampled input tuples
    std::uint64_t seed = 1;

    std::string to_json() const;
};

struct CountTable {
    std::vector<int> input_sizes;
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> counts;  // inputs x outputs
    std::vector<long long> totals_per_setting;

    std::string to_csv() const;
};

struct MonteCarloReport {
    CountTable counts;
    double empirical_bits;
    double true_bits;
    double bias;       // empirical - true
    double v_r1;       // channel-characterization error propagation
    double v_r2;       // joint-form error propagation (conservative)
    double v_r2_delta; // two-level delta-method variance (statistical)
    RealVec joint_prior;
    std::uint64_t seed;

    std::string to_json(const ExperimentConfig& config) const;
};

/// Samples n input tuples from the prior and m outcomes per tuple from the
/// channel (seeded, reproducible), builds the empirical joint distribution,
/// and evaluates the error-propagation formulas.
MonteCarloReport monte_carlo_joint(const ExperimentConfig& config, const TransitionMatrix& tm,
                                   const RealVec& joint_prior);

/// Channel-characterization variance of I(X:Y) when each input setting is
/// measured `counts_per_setting` times and the prior is fixed:
///   V = sum_{x,y} [p(x) log2(p(y|x)/q(y))]^2 Var[n_{y|x}] / N^2.
double variance_channel_characterization(const TransitionMatrix& tm, const RealVec& joint_prior,
                                         double counts_per_setting);

/// Joint-measurement variance with two-level sampling (n random input bits,
/// m photons per bit): independent-cell error propagation with
///   Var[n_xy] = m^2 p(y|x)^2 n p(x)(1-p(x)) + n m p(x) p(y|x)(1-p(y|x)),
/// the first term carrying the prior-generation uncertainty.
double variance_joint_conservative(const TransitionMatrix& tm, const RealVec& joint_prior, double n,
                               double m);

/// Two-level delta-method variance of the plug-in mutual information
/// (covariance-correct; the conservative form above over-counts within-column
/// fluctuations and is conservative).
double variance_joint_delta(const TransitionMatrix& tm, const RealVec& joint_prior, double n,
                            double m);

}  // namespace spmac
