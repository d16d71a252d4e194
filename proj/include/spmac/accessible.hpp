#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spmac/info.hpp"
#include "spmac/mac.hpp"
#include "spmac/quantum.hpp"

namespace spmac {

/// Mirror-symmetric POVM family for the one-sender scenario: pairs
/// (w_m, sigma_m, beta_m) plus the vacuum projector. Valid parameter sets
/// satisfy sum w_m = 1 and sum w_m sigma_m = 1/2; the remaining (complex)
/// completeness condition is checked when a physical POVM is materialized.
struct SymmetricPovmParams {
    struct Pair {
        double weight;
        double sigma;  // in [0,1]
        double beta;   // radians
    };
    std::vector<Pair> pairs;
    double alpha = M_PI;  // encoding phase

    void validate() const;
};

/// One-sender coherence-assisted scenario. The source state is
/// cos(theta)|e_1> + sin(theta)|e_2>; the ternary {block, keep, phase(alpha)}
/// sender acts on path 2 and path 1 is the assistance path, so the encoding
/// touches probability mass sin^2(theta). Prior: p(block) = 1-q,
/// p(keep) = p(phase) = q/2.
struct OneSenderScenario {
    double q;      // non-blocking prior mass
    double theta;  // in [0, pi/2]
    double alpha = M_PI;

    CqEnsemble ensemble() const;
};

/// Two-sender unassisted scenario: sender 1 (binary on-off) on path 1 with
/// transmit prior q, sender 2 (ternary on-off/keep/phase) on path 2 with
/// non-blocking prior q'. Source state cos(theta)|e_1> + sin(theta)|e_2>.
struct TwoSenderTernaryScenario {
    double q;
    double q_prime;
    double theta;
    double alpha = M_PI;

    CqEnsemble ensemble() const;
    /// Channel under the projective decoding {|00>, (|e_1> +- |e_2>)/sqrt2}.
    TransitionMatrix channel() const;
};

/// Per-pair accessible-information summand J(sigma, beta; q, theta, alpha);
/// the accessible information of the scenario ensemble over the symmetric
/// POVM family is max over valid parameter sets of sum_m w_m J(sigma_m, beta_m).
double j_one_sender(double sigma, double beta, const OneSenderScenario& sc);

/// J specialized to the optimal phases alpha = beta = pi.
double j_one_sender_pi(double sigma, double q, double theta);
double dj_one_sender_pi_dsigma(double sigma, double q, double theta);

enum class MeasurementRegime { kWhichPath = 1, kMixed = 2, kUniform = 3 };

struct AccInfoResult {
    double bits;
    MeasurementRegime regime;
    // Materializable measurement parameters (alpha = beta = pi family):
    // pairs (weight, sigma).
    std::vector<std::pair<double, double>> measurement;
    std::optional<double> sigma_star;  // regime-2 tangency point
};

/// Accessible information of the one-sender scenario at alpha = pi: the
/// maximum of the three measurement-regime values. Regime 2's tangency point
/// is found by bisection to 1e-12.
AccInfoResult acc_info_one_sender(double q, double theta);

/// Materializes the regime measurement as a physical POVM on the scenario's
/// ModeSpace (vacuum projector + the symmetric pairs).
Povm materialize_symmetric_povm(const AccInfoResult& result);

struct OneSenderOptimum {
    double q_star;
    double theta_star;
    double cos2_theta_star;
    double bits;
    double residual_theta;  // stationarity residuals at the solution
    double residual_q;
    bool newton_converged;
    std::string to_json() const;
};

/// Solves the two stationarity equations of the regime-3 expression by
/// damped Newton from a coarse-grid seed, then cross-checks against a
/// 401x401 grid of acc_info_one_sender.
OneSenderOptimum optimize_one_sender();

struct AlphaBetaScan {
    struct Maximum {
        double alpha, beta, value;
        double distance_to_pi_lattice;  // to the nearest multiple-of-pi pair
    };
    std::vector<Maximum> maxima;
    double grid_spacing;
};

/// Scans J over an (alpha, beta) grid on [0, 2pi)^2 with wrap-around and
/// reports all grid-local maxima; sigma is held fixed.
AlphaBetaScan lemma_alpha_beta_scan(double q, double theta, int grid = 181, double sigma = 0.5);

/// Largest accessible information at alpha = 0 over the decoding family
/// (beta grid x two-point sigma mixtures); no quantum advantage is available
/// without the phase flip.
double acc_info_alpha_zero_max(double q, double theta, int beta_grid = 181, int sigma_grid = 201);

/// Two-sender binary-ternary accessible information (alpha = beta = pi,
/// sigma = 1/2 family).
double acc_info_two_sender_ternary(double q, double q_prime, double theta);

/// Analytic gradient (d/dq, d/dq', d/dtheta) of acc_info_two_sender_ternary.
RealVec two_sender_ternary_gradient(double q, double q_prime, double theta);

struct TwoSenderTernaryOptimum {
    double q_star, q_prime_star, theta_star;
    double bits;
    RealVec gradient_residual;  // stationarity residuals (dq, dq', dtheta)
    bool newton_converged;
    std::string to_json() const;
};

TwoSenderTernaryOptimum optimize_two_sender_ternary();

struct HolevoClosedForm {
    double x_star;
    double chi_star;
    double transcendental_residual;
    std::string to_json() const;
};

/// Maximizes 2 x h2(x): bisection on h2(x) + x log2((1-x)/x) = 0 over [1/2,1].
HolevoClosedForm holevo_one_sender_closed_form();

/// The materialized optimal one-sender ensemble for the Holevo maximum
/// (q = cos^2 theta = x*... with the scenario's sender acting on sin^2 mass,
/// q = sin^2 theta = x*).
CqEnsemble holevo_optimal_ensemble();

}  // namespace spmac
