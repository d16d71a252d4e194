#include "spmac/mac.hpp"

#include <nlohmann/json.hpp>

namespace spmac {

namespace {
constexpr double kColTol = 1e-10;
}

TransitionMatrix::TransitionMatrix(std::vector<int> input_sizes, RealMat probabilities)
    : input_sizes_(std::move(input_sizes)), p_(std::move(probabilities)) {
    require(!input_sizes_.empty(), "TransitionMatrix: no senders");
    long total = 1;
    for (int m : input_sizes_) {
        require(m >= 1, "TransitionMatrix: empty alphabet");
        total *= m;
    }
    require(p_.cols() == total, "TransitionMatrix: column count mismatch");
    require(p_.rows() >= 1, "TransitionMatrix: no outputs");
    for (int x = 0; x < p_.cols(); ++x) {
        require(std::abs(p_.col(x).sum() - 1.0) <= kColTol,
                "TransitionMatrix: column not normalized");
        for (int y = 0; y < p_.rows(); ++y) {
            require(p_(y, x) >= -tol::kProb && p_(y, x) <= 1.0 + tol::kProb,
                    "TransitionMatrix: probability out of range");
            p_(y, x) = std::min(std::max(p_(y, x), 0.0), 1.0);
        }
    }
}

int TransitionMatrix::flat_index(const std::vector<int>& x) const {
    require(x.size() == input_sizes_.size(), "flat_index: arity mismatch");
    int flat = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        require(x[i] >= 0 && x[i] < input_sizes_[i], "flat_index: symbol out of range");
        flat = flat * input_sizes_[i] + x[i];
    }
    return flat;
}

std::vector<int> TransitionMatrix::unflatten(int flat) const {
    std::vector<int> x(input_sizes_.size());
    for (int i = static_cast<int>(input_sizes_.size()) - 1; i >= 0; --i) {
        x[i] = flat % input_sizes_[i];
        flat /= input_sizes_[i];
    }
    return x;
}

TransitionMatrix TransitionMatrix::flattened() const {
    return TransitionMatrix({num_inputs()}, p_);
}

TransitionMatrix TransitionMatrix::post_compose(const RealMat& stochastic) const {
    require(stochastic.cols() == p_.rows(), "post_compose: shape mismatch");
    for (int y = 0; y < stochastic.cols(); ++y)
        require(std::abs(stochastic.col(y).sum() - 1.0) <= kColTol && stochastic.col(y).minCoeff() >= -tol::kProb,
                "post_compose: map not stochastic");
    return TransitionMatrix(input_sizes_, stochastic * p_);
}

std::string TransitionMatrix::to_json() const {
    nlohmann::json j;
    j["schema"] = "spmac/1";
    j["inputs"] = input_sizes_;
    j["outputs"] = num_outputs();
    nlohmann::json rows = nlohmann::json::array();
    for (int y = 0; y < num_outputs(); ++y) {
        nlohmann::json row = nlohmann::json::array();
        for (int x = 0; x < num_inputs(); ++x) row.push_back(p_(y, x));
        rows.push_back(row);
    }
    j["p"] = rows;
    return j.dump();
}

TransitionMatrix TransitionMatrix::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<int> inputs = j.at("inputs").get<std::vector<int>>();
    int outputs = j.at("outputs").get<int>();
    long total = 1;
    for (int m : inputs) total *= m;
    RealMat p(outputs, total);
    const auto& rows = j.at("p");
    require(static_cast<int>(rows.size()) == outputs, "from_json: row count mismatch");
    for (int y = 0; y < outputs; ++y)
        for (int x = 0; x < total; ++x) p(y, x) = rows[y][x].get<double>();
    return TransitionMatrix(std::move(inputs), std::move(p));
}

EncodingStrategy::EncodingStrategy(std::vector<SenderEncoding> senders)
    : senders_(std::move(senders)) {
    require(!senders_.empty(), "EncodingStrategy: no senders");
    std::vector<int> used_paths;
    for (const auto& s : senders_) {
        require(!s.operations.empty(), "EncodingStrategy: sender with empty alphabet");
        require(s.prior.size() == s.alphabet(), "EncodingStrategy: prior length mismatch");
        require(std::abs(s.prior.sum() - 1.0) <= tol::kNorm && s.prior.minCoeff() >= -tol::kProb,
                "EncodingStrategy: prior not a distribution");
        for (int p : used_paths)
            require(p != s.target_path, "EncodingStrategy: senders must act on distinct paths");
        used_paths.push_back(s.target_path);
    }
}

std::vector<int> EncodingStrategy::input_sizes() const {
    std::vector<int> sizes;
    for (const auto& s : senders_) sizes.push_back(s.alphabet());
    return sizes;
}

RealVec EncodingStrategy::joint_prior() const {
    long total = 1;
    for (const auto& s : senders_) total *= s.alphabet();
    RealVec prior(total);
    for (long flat = 0; flat < total; ++flat) {
        long rest = flat;
        double p = 1.0;
        for (int i = num_senders() - 1; i >= 0; --i) {
            int m = senders_[i].alphabet();
            p *= senders_[i].prior(rest % m);
            rest /= m;
        }
        prior(flat) = p;
    }
    return prior;
}

TransitionMatrix build_mac(const DensityOperator& initial, const EncodingStrategy& enc,
                           const Povm& povm) {
    require(initial.space() == povm.space(), "build_mac: space mismatch");
    for (const auto& s : enc.senders())
        require(s.target_path >= 1 && s.target_path <= initial.space().num_paths(),
                "build_mac: sender path outside ModeSpace");
    require(povm.completeness_deviation() <= tol::kPovm, "build_mac: incomplete POVM");

    const auto sizes = enc.input_sizes();
    long total = 1;
    for (int m : sizes) total *= m;
    RealMat p(povm.num_outcomes(), total);
    for (long flat = 0; flat < total; ++flat) {
        // decode flat index, sender 1 most significant
        std::vector<int> x(sizes.size());
        long rest = flat;
        for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
            x[i] = static_cast<int>(rest % sizes[i]);
            rest /= sizes[i];
        }
        DensityOperator state = initial;
        for (size_t i = 0; i < sizes.size(); ++i)
            state = apply_npe(enc.senders()[i].operations[x[i]], enc.senders()[i].target_path, state);
        p.col(flat) = measure(povm, state);
    }
    return TransitionMatrix(sizes, std::move(p));
}

TransitionMatrix build_mac(const PureState& initial, const EncodingStrategy& enc,
                           const Povm& povm) {
    return build_mac(initial.to_density(), enc, povm);
}

TransitionMatrix canonical_classical_mac(const RealVec& w) {
    const int n = static_cast<int>(w.size());
    require(n >= 1, "canonical_classical_mac: no senders");
    require(std::abs(w.sum() - 1.0) <= tol::kNorm && w.minCoeff() >= -tol::kProb,
            "canonical_classical_mac: weights not a distribution");
    const long total = 1L << n;
    RealMat p = RealMat::Zero(n + 1, total);
    for (long flat = 0; flat < total; ++flat) {
        // bit i of the flat index is sender i+1's input, sender 1 most significant
        for (int k = 1; k <= n; ++k) {
            bool transmits = (flat >> (n - k)) & 1;
            if (transmits)
                p(k, flat) += w(k - 1);
            else
                p(0, flat) += w(k - 1);
        }
    }
    std::vector<int> sizes(n, 2);
    return TransitionMatrix(sizes, std::move(p));
}

TransitionMatrix classical_mac_from_spec(const ClassicalMacSpec& spec) {
    const int n = static_cast<int>(spec.path_weights.size());
    require(n >= 1 && static_cast<int>(spec.encoders.size()) == n,
            "classical_mac_from_spec: sender count mismatch");
    require(std::abs(spec.path_weights.sum() - 1.0) <= tol::kNorm &&
                spec.path_weights.minCoeff() >= -tol::kProb,
            "classical_mac_from_spec: weights not a distribution");
    const int ny = static_cast<int>(spec.decoder.rows());
    require(spec.decoder.cols() == n + 1, "classical_mac_from_spec: decoder shape");
    for (int m = 0; m <= n; ++m)
        require(std::abs(spec.decoder.col(m).sum() - 1.0) <= tol::kNorm,
                "classical_mac_from_spec: decoder not stochastic");
    std::vector<int> sizes;
    long total = 1;
    for (const auto& q : spec.encoders) {
        require(q.rows() == 2, "classical_mac_from_spec: encoder must have rows {block, transmit}");
        for (int c = 0; c < q.cols(); ++c)
            require(std::abs(q.col(c).sum() - 1.0) <= tol::kNorm,
                    "classical_mac_from_spec: encoder not stochastic");
        sizes.push_back(static_cast<int>(q.cols()));
        total *= q.cols();
    }
    RealMat p = RealMat::Zero(ny, total);
    for (long flat = 0; flat < total; ++flat) {
        std::vector<int> x(n);
        long rest = flat;
        for (int i = n - 1; i >= 0; --i) {
            x[i] = static_cast<int>(rest % sizes[i]);
            rest /= sizes[i];
        }
        for (int i = 0; i < n; ++i) {
            double block = spec.encoders[i](0, x[i]);
            double trans = spec.encoders[i](1, x[i]);
            for (int y = 0; y < ny; ++y)
                p(y, flat) += spec.path_weights(i) *
                              (spec.decoder(y, 0) * block + spec.decoder(y, i + 1) * trans);
        }
    }
    return TransitionMatrix(sizes, std::move(p));
}

namespace {

// Decoding vectors of the N-sender assisted protocol, on the
// (N+1)-path ModeSpace (dimension N+2 with vacuum at index 0).
std::vector<Vec> assisted_decoding_vectors(int n) {
    const int dim = n + 2;
    std::vector<Vec> vecs;
    Vec b0 = Vec::Zero(dim);
    for (int i = 1; i <= n; ++i) b0(i) = std::pow(2.0, -0.5 * i);
    b0(n + 1) = std::pow(2.0, -0.5 * n);
    vecs.push_back(b0);
    for (int k = 1; k <= n; ++k) {
        Vec b = Vec::Zero(dim);
        b(k) = -std::sqrt(0.5);
        for (int i = k + 1; i <= n; ++i) b(i) = std::pow(2.0, -0.5 * (i - k + 1));
        b(n + 1) = (k < n) ? std::pow(2.0, -0.5 * (n - k + 1)) : std::sqrt(0.5);
        vecs.push_back(b);
    }
    return vecs;
}

}  // namespace

AssistedProtocol n_sender_assisted_protocol(int n) {
    require(n >= 1, "n_sender_assisted_protocol: need at least one sender");
    Vec amp(n + 1);
    for (int i = 1; i <= n; ++i) amp(i - 1) = std::pow(2.0, -0.5 * i);
    amp(n) = std::pow(2.0, -0.5 * n);
    PureState initial = PureState::on_paths(n + 1, amp);

    std::vector<SenderEncoding> senders;
    for (int i = 1; i <= n; ++i) {
        SenderEncoding s;
        s.operations = {NpeOperation::identity(), NpeOperation::phase(M_PI)};
        s.target_path = i;
        s.prior = RealVec::Constant(2, 0.5);
        senders.push_back(std::move(s));
    }
    auto vecs = assisted_decoding_vectors(n);
    Povm povm = Povm::projective(initial.space(), vecs);
    return {std::move(initial), EncodingStrategy(std::move(senders)), std::move(povm), vecs};
}

UnassistedEquivalent assisted_to_unassisted(int n) {
    require(n >= 2, "assisted_to_unassisted: need at least two senders");
    AssistedProtocol ap = n_sender_assisted_protocol(n);
    const int dim = n + 2;

    // Hadamard on the {e_N, e_{N+1}} plane sends (e_N + e_{N+1})/sqrt2 -> e_N
    // and (e_N - e_{N+1})/sqrt2 -> e_{N+1}.
    Mat U = Mat::Identity(dim, dim);
    const double r = std::sqrt(0.5);
    U(n, n) = r;
    U(n, n + 1) = r;
    U(n + 1, n) = r;
    U(n + 1, n + 1) = -r;

    // Transformed + dephased encoded states, enumerated like build_mac.
    std::vector<DensityOperator> states;
    const long total = 1L << n;
    for (long flat = 0; flat < total; ++flat) {
        DensityOperator st = ap.initial.to_density();
        for (int i = 0; i < n; ++i) {
            int bit = static_cast<int>((flat >> (n - 1 - i)) & 1);
            st = apply_npe(ap.encoding.senders()[i].operations[bit],
                           ap.encoding.senders()[i].target_path, st);
        }
        Mat m = U * st.matrix() * U.adjoint();
        // Dephase across the declared incoherent split {vacuum, paths 1..N} vs
        // {path N+1}: the rotated decoding vectors have no support across it.
        for (int i = 0; i <= n; ++i) {
            m(i, n + 1) = 0.0;
            m(n + 1, i) = 0.0;
        }
        states.emplace_back(ap.initial.space(), std::move(m));
    }
    std::vector<Mat> telems;
    for (const auto& e : ap.povm.elements()) telems.push_back(U * e * U.adjoint());
    Povm tpovm(ap.initial.space(), std::move(telems), ap.povm.labels());

    // Unassisted protocol on N paths: the (N-1)-sender initial-state shape
    // with the last path widened to 2^{-(N-1)/2}.
    Vec amp(n);
    for (int i = 1; i <= n - 1; ++i) amp(i - 1) = std::pow(2.0, -0.5 * i);
    amp(n - 1) = std::pow(2.0, -0.5 * (n - 1));
    PureState uinit = PureState::on_paths(n, amp);

    std::vector<SenderEncoding> senders;
    for (int i = 1; i <= n - 1; ++i) {
        SenderEncoding s;
        s.operations = {NpeOperation::identity(), NpeOperation::phase(M_PI)};
        s.target_path = i;
        s.prior = RealVec::Constant(2, 0.5);
        senders.push_back(std::move(s));
    }
    SenderEncoding blocker;
    blocker.operations = {NpeOperation::identity(), NpeOperation::blocking()};
    blocker.target_path = n;
    blocker.prior = RealVec::Constant(2, 0.5);
    senders.push_back(std::move(blocker));

    // Decoding: the (N-1)-sender assisted vectors embedded on N paths, plus
    // the vacuum projector for the blocked outcome.
    auto inner = assisted_decoding_vectors(n - 1);  // dimension n+1 = N paths + vacuum
    std::vector<Vec> uvecs;
    for (const auto& v : inner) uvecs.push_back(v);
    Vec vac = Vec::Zero(n + 1);
    vac(0) = 1.0;
    uvecs.push_back(vac);
    Povm upovm = Povm::projective(uinit.space(), uvecs);

    return {std::move(states), std::move(tpovm), std::move(uinit),
            EncodingStrategy(std::move(senders)), std::move(upovm)};
}

}  // namespace spmac
