#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spmac/common.hpp"

namespace spmac {

/// Mode space for a single particle distributed over `num_paths` spatial
/// paths, extended by an explicit vacuum basis element at index 0.
/// Basis: index 0 = vacuum |0...0>, index i = |e_i> (particle on path i).
class ModeSpace {
  public:
    explicit ModeSpace(int num_paths) : num_paths_(num_paths) {
        require(num_paths >= 1, "ModeSpace: need at least one path");
    }
    int num_paths() const { return num_paths_; }
    int dimension() const { return num_paths_ + 1; }
    bool operator==(const ModeSpace& o) const { return num_paths_ == o.num_paths_; }
    bool operator!=(const ModeSpace& o) const { return !(*this == o); }

  private:
    int num_paths_;
};

class DensityOperator;

/// Normalized pure state over a ModeSpace.
class PureState {
  public:
    PureState(ModeSpace space, Vec amplitudes);

    /// Particle on paths 1..num_paths with the given amplitudes and no
    /// vacuum component. Normalization is checked, not silently fixed.
    static PureState on_paths(int num_paths, const Vec& path_amplitudes);

    const ModeSpace& space() const { return space_; }
    const Vec& amplitudes() const { return amplitudes_; }
    DensityOperator to_density() const;

  private:
    ModeSpace space_;
    Vec amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on a ModeSpace.
class DensityOperator {
  public:
    DensityOperator(ModeSpace space, Mat matrix);

    static DensityOperator vacuum(const ModeSpace& space);

    const ModeSpace& space() const { return space_; }
    const Mat& matrix() const { return matrix_; }

    /// Smallest eigenvalue (for PSD diagnostics).
    double min_eigenvalue() const;

  private:
    ModeSpace space_;
    Mat matrix_;
};

/// A number-preserving encoding channel on one path: convex mixture of
/// extremal branches, each branch a generalized amplitude-damping Kraus pair
///   K1 = diag(1, e^{i phi1} sqrt(1-gamma)),   K2 = e^{i phi2} sqrt(gamma) |vac><occ|
/// acting on the local {vacuum, occupied} pair of the target path.
class NpeOperation {
  public:
    struct Branch {
        double weight;
        double gamma;  // damping in [0,1]
        double phi1;   // phase on the surviving occupied amplitude
        double phi2;   // phase on the damped (vacuum) amplitude
    };

    explicit NpeOperation(std::vector<Branch> branches);

    static NpeOperation identity() { return NpeOperation({{1.0, 0.0, 0.0, 0.0}}); }
    /// gamma = 1: sends any local state to vacuum (on-off keying "off").
    static NpeOperation blocking() { return NpeOperation({{1.0, 1.0, 0.0, 0.0}}); }
    /// gamma = 0: occupied amplitude picks up e^{i phi} relative to vacuum.
    static NpeOperation phase(double phi) { return NpeOperation({{1.0, 0.0, phi, 0.0}}); }

    const std::vector<Branch>& branches() const { return branches_; }

  private:
    std::vector<Branch> branches_;
};

/// POVM over a ModeSpace: PSD elements with output labels. Completeness is
/// checked against the projector onto the declared support (by default the
/// full space).
class Povm {
  public:
    Povm(ModeSpace space, std::vector<Mat> elements, std::vector<std::string> labels);

    /// Rank-one projective POVM from rows of an orthonormal family; support
    /// is the span of the vectors.
    static Povm projective(ModeSpace space, const std::vector<Vec>& vectors,
                           std::vector<std::string> labels = {});

    const ModeSpace& space() const { return space_; }
    const std::vector<Mat>& elements() const { return elements_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int num_outcomes() const { return static_cast<int>(elements_.size()); }

    /// Max deviation of sum(elements) from the projector onto the support
    /// subspace it spans.
    double completeness_deviation() const;

  private:
    ModeSpace space_;
    std::vector<Mat> elements_;
    std::vector<std::string> labels_;
};

/// Applies an NPE operation to one path of a one-particle-plus-vacuum state.
/// The Kraus pair is embedded so that "occupied" is |e_target> and damped
/// amplitude is routed to the vacuum index.
DensityOperator apply_npe(const NpeOperation& op, int target_path, const DensityOperator& state);

/// Outcome probabilities Tr(Pi_y rho). Entries in [-1e-12, 0) are clamped to
/// zero; the vector sums to 1 (within 1e-10) when the POVM is complete on the
/// state's support.
RealVec measure(const Povm& povm, const DensityOperator& state);

struct OrthonormalReport {
    bool ok;
    double max_deviation;  // worst |<v_i|v_j> - delta_ij|
};

OrthonormalReport orthonormal_check(const std::vector<Vec>& vectors, double tolerance = 1e-10);

}  // namespace spmac
