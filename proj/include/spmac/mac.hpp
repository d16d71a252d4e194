#pragma once

#include <string>
#include <vector>

#include "spmac/quantum.hpp"

namespace spmac {

/// Classical multiple-access channel p(y | x_1 ... x_N) over finite
/// alphabets. Joint inputs are flattened with sender 1 most significant:
/// flat = ((x_1 * m_2 + x_2) * m_3 + x_3) ...
class TransitionMatrix {
  public:
    TransitionMatrix(std::vector<int> input_sizes, RealMat probabilities);

    const std::vector<int>& input_sizes() const { return input_sizes_; }
    int num_senders() const { return static_cast<int>(input_sizes_.size()); }
    int num_inputs() const { return static_cast<int>(p_.cols()); }
    int num_outputs() const { return static_cast<int>(p_.rows()); }
    const RealMat& probabilities() const { return p_; }

    double operator()(int y, const std::vector<int>& x) const { return p_(y, flat_index(x)); }
    int flat_index(const std::vector<int>& x) const;
    std::vector<int> unflatten(int flat) const;

    /// Collapses all senders into one, preserving column order.
    TransitionMatrix flattened() const;

    /// Channel composition: post-process outputs by a column-stochastic map
    /// q(z|y) (rows z, cols y).
    TransitionMatrix post_compose(const RealMat& stochastic) const;

    std::string to_json() const;
    static TransitionMatrix from_json(const std::string& text);

  private:
    std::vector<int> input_sizes_;
    RealMat p_;  // outputs x joint-inputs, column-stochastic
};

/// One sender's encoding: message -> NPE operation on a fixed path, plus the
/// sender's prior over messages.
struct SenderEncoding {
    std::vector<NpeOperation> operations;  // one per message
    int target_path = 1;
    RealVec prior;  // distribution over messages

    int alphabet() const { return static_cast<int>(operations.size()); }
};

class EncodingStrategy {
  public:
    explicit EncodingStrategy(std::vector<SenderEncoding> senders);

    const std::vector<SenderEncoding>& senders() const { return senders_; }
    int num_senders() const { return static_cast<int>(senders_.size()); }
    std::vector<int> input_sizes() const;

    /// Joint product prior over flattened inputs.
    RealVec joint_prior() const;

  private:
    std::vector<SenderEncoding> senders_;
};

/// Classical single-particle MAC in decomposed form: path weights p_i,
/// per-sender stochastic encoders q_i(transmit|x_i), and a decoder
/// d(y | m) over received symbols m in {0 (no particle), e_1, ..., e_N}.
struct ClassicalMacSpec {
    RealVec path_weights;                 // p_1..p_N
    std::vector<RealMat> encoders;        // per sender: 2 x m_i, rows {block, transmit}
    RealMat decoder;                      // |Y| x (N+1), columns {0, e_1, ..., e_N}
};

/// Applies every sender's channel to the initial state and measures,
/// enumerating all joint messages.
TransitionMatrix build_mac(const DensityOperator& initial, const EncodingStrategy& enc,
                           const Povm& povm);
TransitionMatrix build_mac(const PureState& initial, const EncodingStrategy& enc,
                           const Povm& povm);

/// Canonical single-classical-particle MAC: binary inputs per sender,
/// outputs {0, 1, ..., N}; p(k|j) = w_k if j_k = 1 else 0 for k >= 1, and
/// p(0|j) = sum of w_k over senders with j_k = 0.
TransitionMatrix canonical_classical_mac(const RealVec& path_weights);

TransitionMatrix classical_mac_from_spec(const ClassicalMacSpec& spec);

struct AssistedProtocol {
    PureState initial;
    EncodingStrategy encoding;
    Povm povm;
    std::vector<Vec> decoding_vectors;
};

/// N-sender coherence-assisted protocol: initial state
/// sum_i 2^{-i/2} |e_i> + 2^{-N/2} |e_{N+1}>, per-sender {identity, phase pi}
/// encodings on paths 1..N, and the (N+1)-outcome projective decoding.
AssistedProtocol n_sender_assisted_protocol(int num_senders);

struct UnassistedEquivalent {
    // Assisted-protocol ingredients after the basis rotation and dephasing
    // across the {paths 1..N} / {path N+1} split.
    std::vector<DensityOperator> transformed_states;  // indexed by flat input
    Povm transformed_povm;
    // Equivalent unassisted protocol on N paths: phase encodings for senders
    // 1..N-1 plus one blocking sender on path N.
    PureState unassisted_initial;
    EncodingStrategy unassisted_encoding;
    Povm unassisted_povm;
};

/// Converts the N-sender assisted protocol into an unassisted protocol with
/// identical transition probabilities (N >= 2).
UnassistedEquivalent assisted_to_unassisted(int num_senders);

}  // namespace spmac
