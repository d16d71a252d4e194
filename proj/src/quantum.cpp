#include "spmac/quantum.hpp"

#include <Eigen/Eigenvalues>

namespace spmac {

PureState::PureState(ModeSpace space, Vec amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
    require(amplitudes_.size() == space_.dimension(), "PureState: amplitude length mismatch");
    require(std::abs(amplitudes_.squaredNorm() - 1.0) <= tol::kNorm,
            "PureState: not normalized");
}

PureState PureState::on_paths(int num_paths, const Vec& path_amplitudes) {
    require(path_amplitudes.size() == num_paths, "PureState::on_paths: size mismatch");
    ModeSpace space(num_paths);
    Vec amp = Vec::Zero(space.dimension());
    amp.tail(num_paths) = path_amplitudes;
    return PureState(space, amp);
}

DensityOperator PureState::to_density() const {
    return DensityOperator(space_, amplitudes_ * amplitudes_.adjoint());
}

DensityOperator::DensityOperator(ModeSpace space, Mat matrix)
    : space_(space), matrix_(std::move(matrix)) {
    const int d = space_.dimension();
    require(matrix_.rows() == d && matrix_.cols() == d, "DensityOperator: shape mismatch");
    require((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol::kHermitian,
            "DensityOperator: not Hermitian");
    require(std::abs(matrix_.trace().real() - 1.0) <= tol::kNorm &&
                std::abs(matrix_.trace().imag()) <= tol::kNorm,
            "DensityOperator: trace != 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-10, "DensityOperator: not PSD");
}

DensityOperator DensityOperator::vacuum(const ModeSpace& space) {
    Mat m = Mat::Zero(space.dimension(), space.dimension());
    m(0, 0) = 1.0;
    return DensityOperator(space, m);
}

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

NpeOperation::NpeOperation(std::vector<Branch> branches) : branches_(std::move(branches)) {
    require(!branches_.empty(), "NpeOperation: no branches");
    double wsum = 0.0;
    for (const auto& b : branches_) {
        require(b.weight >= 0.0, "NpeOperation: negative branch weight");
        require(b.gamma >= 0.0 && b.gamma <= 1.0, "NpeOperation: gamma outside [0,1]");
        wsum += b.weight;
    }
    require(std::abs(wsum - 1.0) <= tol::kNorm, "NpeOperation: weights must sum to 1");
    // K1^dag K1 + K2^dag K2 = diag(1, (1-gamma) + gamma) = identity, exact by
    // construction for every branch; nothing further to check numerically.
}

Povm::Povm(ModeSpace space, std::vector<Mat> elements, std::vector<std::string> labels)
    : space_(space), elements_(std::move(elements)), labels_(std::move(labels)) {
    require(!elements_.empty(), "Povm: no elements");
    const int d = space_.dimension();
    if (labels_.empty()) {
        for (size_t i = 0; i < elements_.size(); ++i) labels_.push_back(std::to_string(i));
    }
    require(labels_.size() == elements_.size(), "Povm: labels/elements size mismatch");
    for (const auto& e : elements_) {
        require(e.rows() == d && e.cols() == d, "Povm: element shape mismatch");
        require((e - e.adjoint()).cwiseAbs().maxCoeff() <= tol::kPsd, "Povm: element not Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
        require(es.eigenvalues().minCoeff() >= -tol::kPsd, "Povm: element not PSD");
    }
    require(completeness_deviation() <= tol::kPovm, "Povm: elements do not resolve the support");
}

Povm Povm::projective(ModeSpace space, const std::vector<Vec>& vectors,
                      std::vector<std::string> labels) {
    auto rep = orthonormal_check(vectors);
    require(rep.ok, "Povm::projective: vectors not orthonormal");
    std::vector<Mat> elems;
    elems.reserve(vectors.size());
    for (const auto& v : vectors) {
        require(v.size() == space.dimension(), "Povm::projective: dimension mismatch");
        elems.push_back(v * v.adjoint());
    }
    return Povm(space, std::move(elems), std::move(labels));
}

double Povm::completeness_deviation() const {
    const int d = space_.dimension();
    Mat sum = Mat::Zero(d, d);
    for (const auto& e : elements_) sum += e;
    // The support projector is the projector onto the range of the sum; for a
    // complete POVM the sum must act as identity there. Eigenvalues of the sum
    // are then either 0 (outside support) or 1.
    Eigen::SelfAdjointEigenSolver<Mat> es(sum, Eigen::EigenvaluesOnly);
    double dev = 0.0;
    for (int i = 0; i < d; ++i) {
        double lam = es.eigenvalues()(i);
        dev = std::max(dev, std::min(std::abs(lam), std::abs(lam - 1.0)));
    }
    return dev;
}

DensityOperator apply_npe(const NpeOperation& op, int target_path, const DensityOperator& state) {
    const ModeSpace& space = state.space();
    require(target_path >= 1 && target_path <= space.num_paths(),
            "apply_npe: target path out of range");
    const int d = space.dimension();
    const int t = target_path;  // basis index of |e_target|
    Mat out = Mat::Zero(d, d);
    for (const auto& b : op.branches()) {
        if (b.weight == 0.0) continue;
        // K1 = identity except amplitude e^{i phi1} sqrt(1-gamma) on |e_t>.
        Vec k1diag = Vec::Ones(d);
        k1diag(t) = std::polar(std::sqrt(1.0 - b.gamma), b.phi1);
        Mat term = k1diag.asDiagonal() * state.matrix() * k1diag.conjugate().asDiagonal();
        // K2 = e^{i phi2} sqrt(gamma) |vac><e_t| : routes damped weight to vacuum.
        term(0, 0) += b.gamma * state.matrix()(t, t).real();
        out += b.weight * term;
    }
    return DensityOperator(space, out);
}

RealVec measure(const Povm& povm, const DensityOperator& state) {
    require(povm.space() == state.space(), "measure: ModeSpace mismatch");
    RealVec p(povm.num_outcomes());
    for (int y = 0; y < povm.num_outcomes(); ++y) {
        double v = (povm.elements()[y] * state.matrix()).trace().real();
        require(v >= -tol::kProb, "measure: negative outcome probability");
        p(y) = std::max(v, 0.0);
    }
    return p;
}

OrthonormalReport orthonormal_check(const std::vector<Vec>& vectors, double tolerance) {
    require(!vectors.empty(), "orthonormal_check: empty list");
    const auto dim = vectors.front().size();
    double worst = 0.0;
    for (size_t i = 0; i < vectors.size(); ++i) {
        require(vectors[i].size() == dim, "orthonormal_check: dimension mismatch");
        for (size_t j = i; j < vectors.size(); ++j) {
            Complex g = vectors[i].adjoint() * vectors[j];
            double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - Complex(target)));
        }
    }
    return {worst <= tolerance, worst};
}

}  // namespace spmac
