#include <doctest.h>

#include <random>

#include "spmac/accessible.hpp"
#include "spmac/capacity.hpp"
#include "spmac/experiment.hpp"
#include "spmac/info.hpp"

using namespace spmac;

namespace {

CqEnsemble random_povm_ensemble(std::mt19937_64& gen, int paths, int states) {
    std::normal_distribution<double> nrm(0.0, 1.0);
    const int d = paths + 1;
    CqEnsemble ens;
    RealVec pr(states);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < states; ++i) pr(i) = u(gen);
    ens.priors = pr / pr.sum();
    for (int i = 0; i < states; ++i) {
        Mat a(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) a(r, c) = Complex(nrm(gen), nrm(gen));
        Mat rho = a * a.adjoint();
        rho /= rho.trace().real();
        ens.states.emplace_back(ModeSpace(paths), rho);
    }
    return ens;
}

Povm random_complete_povm(std::mt19937_64& gen, int paths, int outcomes) {
    std::normal_distribution<double> nrm(0.0, 1.0);
    const int d = paths + 1;
    Mat total = Mat::Zero(d, d);
    std::vector<Mat> raw;
    for (int y = 0; y < outcomes; ++y) {
        Mat a(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) a(r, c) = Complex(nrm(gen), nrm(gen));
        Mat e = a * a.adjoint();
        raw.push_back(e);
        total += e;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(total);
    Mat inv_sqrt = es.operatorInverseSqrt();
    std::vector<Mat> elems;
    for (auto& e : raw) elems.push_back(inv_sqrt * e * inv_sqrt);
    return Povm(ModeSpace(paths), elems, {});
}

}  // namespace

TEST_CASE("entropy basics") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    RealVec d(2);
    d << 16.0 / 17.0, 1.0 / 17.0;
    CHECK(entropy(d) == doctest::Approx(0.32275695889739823).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
}

TEST_CASE("mutual information of independent and correlated bits") {
    RealMat indep(2, 2), corr(2, 2);
    indep << 0.25, 0.25, 0.25, 0.25;
    corr << 0.5, 0.0, 0.0, 0.5;
    CHECK(mutual_information(JointDistribution({2}, indep)) == doctest::Approx(0.0));
    CHECK(mutual_information(JointDistribution({2}, corr)) == doctest::Approx(1.0));
}

TEST_CASE("ideal balanced channel with the reference prior reaches log2(17/8)") {
    TransitionMatrix tm = two_sender_balanced_channel();
    double value = channel_mutual_information(tm, balanced_optimal_prior_joint());
    CHECK(value == doctest::Approx(std::log2(17.0 / 8.0)).epsilon(1e-15));

    // Same number on the displayed assisted-protocol channel with the
    // literally quoted prior (uniform x1, biased x2).
    AssistedProtocol p = n_sender_assisted_protocol(2);
    TransitionMatrix tm2 = build_mac(p.initial, p.encoding, p.povm);
    RealVec p1 = RealVec::Constant(2, 0.5), p2(2);
    p2 << 15.0 / 17.0, 2.0 / 17.0;
    RateRegion rr = rate_region_two_sender(tm2, p1, p2);
    CHECK(rr.i_joint == doctest::Approx(std::log2(17.0 / 8.0)).epsilon(1e-14));
}

TEST_CASE("chain rule holds on random joints") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int t = 0; t < 20; ++t) {
        RealMat j(4, 3);
        double total = 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 3; ++c) {
                j(r, c) = u(gen);
                total += j(r, c);
            }
        j /= total;
        JointDistribution jd({2, 2}, j);
        double lhs = mutual_information(jd);
        double rhs = mutual_information(jd, {1}) + conditional_mutual_information(jd, {0}, {1});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("data processing never increases mutual information") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TransitionMatrix tm = two_sender_balanced_channel();
    RealVec prior = balanced_optimal_prior_joint();
    double before = channel_mutual_information(tm, prior);
    for (int t = 0; t < 20; ++t) {
        RealMat map(3, 3);
        for (int c = 0; c < 3; ++c) {
            double total = 0;
            for (int r = 0; r < 3; ++r) {
                map(r, c) = u(gen);
                total += map(r, c);
            }
            map.col(c) /= total;
        }
        double after = channel_mutual_information(tm.post_compose(map), prior);
        CHECK(after <= before + 1e-10);
    }
}

TEST_CASE("holevo_chi basics") {
    ModeSpace space(2);
    Vec e1 = Vec::Zero(3), e2 = Vec::Zero(3);
    e1(1) = 1;
    e2(2) = 1;
    CqEnsemble ens;
    ens.priors = RealVec::Constant(2, 0.5);
    ens.states = {PureState(space, e1).to_density(), PureState(space, e2).to_density()};
    CHECK(holevo_chi(ens) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("equal-superposition phase ensembles give log2 N") {
    for (int n = 2; n <= 8; ++n) {
        Vec amp = Vec::Constant(n, 1.0 / std::sqrt(n));
        PureState psi = PureState::on_paths(n, amp);
        CqEnsemble ens;
        long total = 1L << n;
        ens.priors = RealVec::Constant(total, 1.0 / total);
        for (long pat = 0; pat < total; ++pat) {
            DensityOperator st = psi.to_density();
            for (int i = 0; i < n; ++i)
                if ((pat >> i) & 1) st = apply_npe(NpeOperation::phase(M_PI), i + 1, st);
            ens.states.push_back(st);
        }
        CHECK(holevo_chi(ens) == doctest::Approx(std::log2(n)).epsilon(1e-12));
    }
}

TEST_CASE("holevo_chi of the Theorem-4 optimal ensemble") {
    CqEnsemble ens = holevo_optimal_ensemble();
    CHECK(holevo_chi(ens) == doctest::Approx(1.2338972868263487).epsilon(1e-10));
}

TEST_CASE("holevo_chi is invariant under a common unitary conjugation") {
    std::mt19937_64 gen(6);
    CqEnsemble ens = random_povm_ensemble(gen, 2, 4);
    double chi = holevo_chi(ens);
    std::normal_distribution<double> nrm(0.0, 1.0);
    Mat g(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) g(r, c) = Complex(nrm(gen), nrm(gen));
    Mat u = Eigen::HouseholderQR<Mat>(g).householderQ();
    CqEnsemble rotated;
    rotated.priors = ens.priors;
    for (const auto& st : ens.states)
        rotated.states.emplace_back(st.space(), Mat(u * st.matrix() * u.adjoint()));
    CHECK(holevo_chi(rotated) == doctest::Approx(chi).epsilon(1e-10));
}

TEST_CASE("Holevo dominates the accessible information of any POVM") {
    std::mt19937_64 gen(7);
    for (int t = 0; t < 10; ++t) {
        CqEnsemble ens = random_povm_ensemble(gen, 2, 3);
        double chi = holevo_chi(ens);
        Povm povm = random_complete_povm(gen, 2, 4);
        RealMat joint(3, 4);
        for (int x = 0; x < 3; ++x) {
            RealVec probs = measure(povm, ens.states[x]);
            for (int y = 0; y < 4; ++y) joint(x, y) = ens.priors(x) * probs(y);
        }
        double info = mutual_information(JointDistribution({3}, joint));
        CHECK(info <= chi + 1e-9);
    }
}

TEST_CASE("rate region rejects non-two-sender channels") {
    RealVec w(3);
    w << 0.2, 0.5, 0.3;
    TransitionMatrix tm = canonical_classical_mac(w);
    CHECK_THROWS_AS(
        rate_region_two_sender(tm, RealVec::Constant(2, 0.5), RealVec::Constant(2, 0.5)),
        std::invalid_argument);
    CHECK_THROWS_AS(classical_region_sweep({}), std::invalid_argument);
}

TEST_CASE("rate region of a copy-x1 channel") {
    RealMat p(2, 4);
    // copies x1, ignores x2
    p.col(0) << 1, 0;
    p.col(1) << 1, 0;
    p.col(2) << 0, 1;
    p.col(3) << 0, 1;
    TransitionMatrix tm({2, 2}, p);
    RateRegion rr = rate_region_two_sender(tm, RealVec::Constant(2, 0.5), RealVec::Constant(2, 0.5));
    CHECK(rr.i1_given_2 == doctest::Approx(1.0));
    CHECK(rr.i2_given_1 == doctest::Approx(0.0));
    CHECK(rr.i_joint == doctest::Approx(1.0));
    CHECK(rr.r1_star == doctest::Approx(1.0));
    CHECK(rr.r2_star == doctest::Approx(0.0));
}

TEST_CASE("rate region bounds vs brute-force formulas on the canonical MAC") {
    RealVec w(2);
    w << 0.5, 0.5;
    TransitionMatrix tm = canonical_classical_mac(w);
    RealVec p1(2), p2(2);
    p1 << 0.6, 0.4;
    p2 << 0.3, 0.7;
    RateRegion rr = rate_region_two_sender(tm, p1, p2);

    // Independent oracle: direct summation over the 2x2x3 joint.
    auto H = [](std::vector<double> v) {
        double h = 0;
        for (double x : v)
            if (x > 0) h -= x * std::log2(x);
        return h;
    };
    std::vector<double> pj;
    std::vector<double> px1(2, 0.0), px2(2, 0.0), py(3, 0.0);
    std::vector<double> px1y(6, 0.0), px2y(6, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int y = 0; y < 3; ++y) {
                double v = p1(a) * p2(b) * tm(y, {a, b});
                pj.push_back(v);
                px1[a] += v;
                px2[b] += v;
                py[y] += v;
                px1y[a * 3 + y] += v;
                px2y[b * 3 + y] += v;
            }
    // Product prior, so H(X1 X2) = H(X1) + H(X2).
    double i_full = H(px1) + H(px2) + H(py) - H(pj);
    double i1 = H(px1) + H(py) - H(px1y);
    double i2 = H(px2) + H(py) - H(px2y);
    CHECK(rr.i_joint == doctest::Approx(i_full).epsilon(1e-12));
    CHECK(rr.r1_star == doctest::Approx(i1).epsilon(1e-12));
    CHECK(rr.r2_dstar == doctest::Approx(i2).epsilon(1e-12));
    CHECK(rr.i1_given_2 + i2 == doctest::Approx(i_full).epsilon(1e-10));
    CHECK(rr.i1_given_2 >= -1e-12);
    CHECK(rr.i_joint <= std::log2(3.0) + 1e-9);
}

TEST_CASE("classical region sweep: small grid") {
    ClassicalSweep sweep = classical_region_sweep({0.0, 0.5, 1.0});
    CHECK(sweep.points.size() == 3);
    for (const auto& pt : sweep.points) CHECK(pt.rate_sum <= 1.0 + 1e-9);
    // lambda = 0: particle never on path 1, so R1 = 0 and R2 reaches 1.
    CHECK(sweep.points[0].r1_star == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::max(sweep.points[0].r2_star, sweep.points[0].r2_dstar) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // lambda = 1/2: corner points symmetric under R1 <-> R2.
    const auto& mid = sweep.points[1];
    CHECK(mid.r1_star == doctest::Approx(mid.r2_dstar).epsilon(1e-9));
    CHECK(mid.r2_star == doctest::Approx(mid.r1_dstar).epsilon(1e-9));
}

TEST_CASE("classical region sweep: corner-curve slopes straddle -1") {
    // The (R1*, R2*) curve stays flatter than -1 for lambda >= 1/2 and the
    // (R1**, R2**) curve steeper than -1 for lambda <= 1/2, so together they
    // enclose the union of the pentagons.
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(i / 40.0);
    ClassicalSweep sweep = classical_region_sweep(grid);
    for (size_t i = 1; i < sweep.points.size(); ++i) {
        const auto& a = sweep.points[i - 1];
        const auto& b = sweep.points[i];
        if (a.lambda >= 0.5) {
            double dr1 = b.r1_star - a.r1_star;
            double dr2 = b.r2_star - a.r2_star;
            if (std::abs(dr1) > 1e-9) CHECK(dr2 / dr1 >= -1.0 - 1e-6);
        }
        if (b.lambda <= 0.5) {
            double dr1 = b.r1_dstar - a.r1_dstar;
            double dr2 = b.r2_dstar - a.r2_dstar;
            if (std::abs(dr1) > 1e-9) CHECK(dr2 / dr1 <= -1.0 + 1e-6);
        }
    }
}
