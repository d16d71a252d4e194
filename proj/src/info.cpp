#include "spmac/info.hpp"

#include <Eigen/Eigenvalues>

namespace spmac {

namespace {
constexpr double kJointTol = 1e-10;

double entropy_flat(const RealMat& m) {
    double h = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) h -= xlog2x(m(i, j));
    return h;
}
}  // namespace

JointDistribution::JointDistribution(std::vector<int> input_sizes, RealMat joint)
    : input_sizes_(std::move(input_sizes)), joint_(std::move(joint)) {
    long total = 1;
    for (int m : input_sizes_) total *= m;
    require(joint_.rows() == total, "JointDistribution: input count mismatch");
    require(joint_.minCoeff() >= -tol::kProb, "JointDistribution: negative entry");
    require(std::abs(joint_.sum() - 1.0) <= kJointTol, "JointDistribution: not normalized");
    joint_ = joint_.cwiseMax(0.0);
}

JointDistribution JointDistribution::from_channel(const TransitionMatrix& tm,
                                                  const RealVec& joint_prior) {
    require(joint_prior.size() == tm.num_inputs(), "from_channel: prior length mismatch");
    require(std::abs(joint_prior.sum() - 1.0) <= tol::kNorm && joint_prior.minCoeff() >= -tol::kProb,
            "from_channel: prior not a distribution");
    RealMat joint(tm.num_inputs(), tm.num_outputs());
    for (int x = 0; x < tm.num_inputs(); ++x)
        for (int y = 0; y < tm.num_outputs(); ++y) joint(x, y) = joint_prior(x) * tm.probabilities()(y, x);
    return JointDistribution(tm.input_sizes(), std::move(joint));
}

RealMat JointDistribution::marginal_with_output(const std::vector<int>& subset) const {
    long sub_total = 1;
    for (int s : subset) {
        require(s >= 0 && s < static_cast<int>(input_sizes_.size()), "marginal: bad sender index");
        sub_total *= input_sizes_[s];
    }
    RealMat out = RealMat::Zero(sub_total, joint_.cols());
    for (int flat = 0; flat < joint_.rows(); ++flat) {
        // digits of flat, sender 0 most significant
        long rest = flat;
        std::vector<int> x(input_sizes_.size());
        for (int i = static_cast<int>(input_sizes_.size()) - 1; i >= 0; --i) {
            x[i] = static_cast<int>(rest % input_sizes_[i]);
            rest /= input_sizes_[i];
        }
        long sub = 0;
        for (int s : subset) sub = sub * input_sizes_[s] + x[s];
        out.row(sub) += joint_.row(flat);
    }
    return out;
}

RealVec JointDistribution::output_marginal() const { return joint_.colwise().sum(); }
RealVec JointDistribution::input_marginal() const { return joint_.rowwise().sum(); }

double entropy(const RealVec& dist) {
    require(dist.minCoeff() >= -tol::kProb, "entropy: negative probability");
    require(std::abs(dist.sum() - 1.0) <= kJointTol, "entropy: not normalized");
    double h = 0.0;
    for (int i = 0; i < dist.size(); ++i) h -= xlog2x(std::max(dist(i), 0.0));
    return h;
}

double mutual_information(const JointDistribution& joint, const std::vector<int>& senders) {
    std::vector<int> subset = senders;
    if (subset.empty())
        for (size_t i = 0; i < joint.input_sizes().size(); ++i) subset.push_back(static_cast<int>(i));
    RealMat m = joint.marginal_with_output(subset);
    RealVec px = m.rowwise().sum();
    RealVec py = m.colwise().sum();
    double hx = 0.0, hy = 0.0;
    for (int i = 0; i < px.size(); ++i) hx -= xlog2x(px(i));
    for (int j = 0; j < py.size(); ++j) hy -= xlog2x(py(j));
    return hx + hy - entropy_flat(m);
}

double conditional_mutual_information(const JointDistribution& joint, const std::vector<int>& s,
                                      const std::vector<int>& given) {
    std::vector<int> both = s;
    for (int g : given) both.push_back(g);
    return mutual_information(joint, both) - mutual_information(joint, given);
}

double channel_mutual_information(const TransitionMatrix& tm, const RealVec& joint_prior) {
    return mutual_information(JointDistribution::from_channel(tm, joint_prior));
}

double von_neumann_entropy(const Mat& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()(i);
        require(lam >= -1e-10, "von_neumann_entropy: operator not PSD");
        if (lam > 1e-12) h -= lam * std::log2(lam);
    }
    return h;
}

double holevo_chi(const CqEnsemble& ens) {
    require(ens.priors.size() == static_cast<long>(ens.states.size()),
            "holevo_chi: priors/states mismatch");
    require(std::abs(ens.priors.sum() - 1.0) <= tol::kNorm && ens.priors.minCoeff() >= -tol::kProb,
            "holevo_chi: priors not a distribution");
    require(!ens.states.empty(), "holevo_chi: empty ensemble");
    const int d = ens.states.front().space().dimension();
    Mat avg = Mat::Zero(d, d);
    double avg_entropy = 0.0;
    for (size_t i = 0; i < ens.states.size(); ++i) {
        require(ens.states[i].space() == ens.states.front().space(), "holevo_chi: space mismatch");
        avg += ens.priors(static_cast<long>(i)) * ens.states[i].matrix();
        avg_entropy += ens.priors(static_cast<long>(i)) * von_neumann_entropy(ens.states[i].matrix());
    }
    return von_neumann_entropy(avg) - avg_entropy;
}

RateRegion rate_region_two_sender(const TransitionMatrix& tm, const RealVec& prior1,
                                  const RealVec& prior2) {
    require(tm.num_senders() == 2, "rate_region_two_sender: need exactly two senders");
    require(prior1.size() == tm.input_sizes()[0] && prior2.size() == tm.input_sizes()[1],
            "rate_region_two_sender: prior size mismatch");
    RealVec jp(tm.num_inputs());
    for (int a = 0; a < prior1.size(); ++a)
        for (int b = 0; b < prior2.size(); ++b) jp(a * prior2.size() + b) = prior1(a) * prior2(b);
    JointDistribution joint = JointDistribution::from_channel(tm, jp);
    double i1 = mutual_information(joint, {0});
    double i2 = mutual_information(joint, {1});
    double ij = mutual_information(joint);
    RateRegion r;
    r.i1_given_2 = ij - i2;
    r.i2_given_1 = ij - i1;
    r.i_joint = ij;
    r.r1_star = i1;
    r.r2_star = r.i2_given_1;
    r.r1_dstar = r.i1_given_2;
    r.r2_dstar = i2;
    r.prior1 = prior1;
    r.prior2 = prior2;
    return r;
}

}  // namespace spmac
