// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spmac/accessible.hpp"
#include "spmac/capacity.hpp"
#include "spmac/experiment.hpp"
#include "spmac/info.hpp"
#include "spmac/mac.hpp"

using namespace spmac;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TransitionMatrix assisted_channel(int n) {
    AssistedProtocol p = n_sender_assisted_protocol(n);
    return build_mac(p.initial, p.encoding, p.povm);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

// 1. Classical bound: rate sums of canonical MACs never exceed one bit, and
//    the plain block/transmit protocol achieves exactly one.
static void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        RealVec w(2);
        w << i / 20.0, 1.0 - i / 20.0;
        worst = std::max(worst, ba_mac_rate_sum(canonical_classical_mac(w)).value_bits);
    }
    ClassicalMacSpec spec;
    spec.path_weights = RealVec::Constant(1, 1.0);
    RealMat enc(2, 2);
    enc << 1, 0, 0, 1;
    spec.encoders = {enc};
    spec.decoder = RealMat::Identity(2, 2);
    double achieved = ba_point_to_point(classical_mac_from_spec(spec)).value_bits;
    double el = seconds_since(t0);
    bool pass = worst <= 1.0 + 1e-9 && std::abs(achieved - 1.0) <= 1e-9 && el < 10.0;
    report(1, "classical one-bit bound", pass,
           "max=" + fmt(worst) + " achieved=" + fmt(achieved) + " t=" + fmt(el) + "s");
}

// 2. One-sender optimum: 1.0931 at (q, cos^2 theta) = (0.8701, 0.4715).
static void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    OneSenderOptimum o = optimize_one_sender();
    double el = seconds_since(t0);
    bool pass = std::abs(o.bits - 1.0931) <= 1e-3 && std::abs(o.q_star - 0.8701) <= 0.01 &&
                std::abs(o.cos2_theta_star - 0.4715) <= 0.01 &&
                std::abs(o.residual_q) < 1e-9 && std::abs(o.residual_theta) < 1e-9 && el < 5.0;
    report(2, "one-sender optimum", pass,
           "I=" + fmt(o.bits) + " q=" + fmt(o.q_star) + " cos2=" + fmt(o.cos2_theta_star) +
               " t=" + fmt(el) + "s");
}

// 3. Equal superposition: analytic value and channel-level value log2(17/8).
static void criterion_3() {
    double target = std::log2(17.0 / 8.0);
    double analytic = acc_info_one_sender(15.0 / 17.0, M_PI / 4.0).bits;
    double channel =
        channel_mutual_information(two_sender_balanced_channel(), balanced_optimal_prior_joint());
    bool pass = std::abs(analytic - target) <= 1e-10 && std::abs(channel - target) <= 1e-12;
    report(3, "log2(17/8) at the balanced point", pass,
           "analytic=" + fmt(analytic) + " channel=" + fmt(channel));
}

// 4. Two-sender ternary optimum 1.10138 at (0.9197, 0.9197, pi/4), and the
//    formula agrees with the constructive channel.
static void criterion_4() {
    TwoSenderTernaryOptimum o = optimize_two_sender_ternary();
    TwoSenderTernaryScenario sc{o.q_star, o.q_prime_star, o.theta_star, M_PI};
    RealVec jp(6);
    const double p1[2] = {1 - sc.q, sc.q};
    const double p2[3] = {1 - sc.q_prime, sc.q_prime / 2, sc.q_prime / 2};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b) jp(a * 3 + b) = p1[a] * p2[b];
    double constructive = channel_mutual_information(sc.channel(), jp);
    bool pass = std::abs(o.bits - 1.10138) <= 1e-3 && std::abs(o.q_star - 0.9197) <= 0.01 &&
                std::abs(o.q_prime_star - 0.9197) <= 0.01 &&
                std::abs(o.theta_star - M_PI / 4) <= 0.01 &&
                std::abs(o.bits - constructive) <= 1e-8;
    report(4, "two-sender ternary optimum", pass,
           "I=" + fmt(o.bits) + " q=" + fmt(o.q_star) + " q'=" + fmt(o.q_prime_star) +
               " theta=" + fmt(o.theta_star) + " constructive=" + fmt(constructive));
}

// 5. Holevo closed form 1.2339 at x* = 0.7035, matched by holevo_chi of the
//    materialized ensemble.
static void criterion_5() {
    HolevoClosedForm h = holevo_one_sender_closed_form();
    double chi = holevo_chi(holevo_optimal_ensemble());
    bool pass = std::abs(h.chi_star - 1.2339) <= 1e-4 && std::abs(h.x_star - 0.7035) <= 1e-3 &&
                std::abs(chi - h.chi_star) <= 1e-8;
    report(5, "one-sender Holevo capacity", pass,
           "chi=" + fmt(h.chi_star) + " x=" + fmt(h.x_star) + " ensemble=" + fmt(chi));
}

// 6. Equal-superposition phase ensembles: chi = log2 N (and log2(N+1) with an
//    assistance path).
static void criterion_6() {
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        for (int assist = 0; assist <= 1; ++assist) {
            int paths = n + assist;
            Vec amp = Vec::Constant(paths, 1.0 / std::sqrt(paths));
            PureState psi = PureState::on_paths(paths, amp);
            CqEnsemble ens;
            long total = 1L << n;
            ens.priors = RealVec::Constant(total, 1.0 / total);
            for (long pat = 0; pat < total; ++pat) {
                DensityOperator st = psi.to_density();
                for (int i = 0; i < n; ++i)
                    if ((pat >> i) & 1) st = apply_npe(NpeOperation::phase(M_PI), i + 1, st);
                ens.states.push_back(st);
            }
            worst = std::max(worst, std::abs(holevo_chi(ens) - std::log2(paths)));
        }
    }
    report(6, "equal-superposition chi = log2 N", worst <= 1e-10, "worst dev=" + fmt(worst));
}

// 7. Assisted-protocol rate sums: 1.0875 at N=2, non-decreasing, below the
//    flattened bound, and matching the frozen goldens for N=3..8.
static void criterion_7() {
    auto t0 = std::chrono::steady_clock::now();
    // Goldens recorded from the first converged run of this solver.
    const double golden[9] = {0, 0, 1.08746284, 1.11053161, 1.11869377,
                              1.12201949, 1.12347008, 1.12412615, 1.12442903};
    bool pass = true;
    std::string detail;
    double prev = 0.0;
    for (int n = 2; n <= 8; ++n) {
        BaOptions opts;
        opts.restarts = (n <= 4) ? 16 : 8;
        CapacityResult res = ba_mac_rate_sum(assisted_channel(n), opts);
        if (n == 2 && std::abs(res.value_bits - 1.0875) > 1e-4) pass = false;
        if (res.value_bits < prev - 1e-9) pass = false;
        if (res.value_bits <= std::log2(17.0 / 8.0) - 1e-6) pass = false;
        if (res.value_bits > *res.upper_bound_bits + 1e-9) pass = false;
        if (std::abs(res.value_bits - golden[n]) > 5e-5) pass = false;
        prev = res.value_bits;
        detail += (n > 2 ? " " : "") + fmt(res.value_bits);
    }
    double el = seconds_since(t0);
    pass = pass && el < 180.0;
    report(7, "assisted rate sums N=2..8", pass, detail + " t=" + fmt(el) + "s");
}

// 8. Assisted and derived unassisted channels agree elementwise.
static void criterion_8() {
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        TransitionMatrix a = assisted_channel(n);
        UnassistedEquivalent eq = assisted_to_unassisted(n);
        TransitionMatrix u =
            build_mac(eq.unassisted_initial, eq.unassisted_encoding, eq.unassisted_povm);
        worst = std::max(worst, (a.probabilities() - u.probabilities()).cwiseAbs().maxCoeff());
    }
    report(8, "assisted = unassisted channels", worst <= 1e-12, "worst dev=" + fmt(worst));
}

// 9. Classical region sweep over 201 lambdas: rate sums below one, hull
//    vertices recovered, lambda <-> 1-lambda symmetry.
static void criterion_9() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> grid;
    for (int i = 0; i < 201; ++i) grid.push_back(i / 200.0);
    ClassicalSweep sweep = classical_region_sweep(grid);
    bool pass = true;
    double max_sum = 0.0;
    for (const auto& pt : sweep.points) max_sum = std::max(max_sum, pt.rate_sum);
    if (max_sum > 1.0 + 1e-9) pass = false;
    // Hull vertices (1,0) and (0,1): the extreme boundary points.
    double max_r1 = 0.0, max_r2 = 0.0;
    for (const auto& [r1, r2] : sweep.union_boundary) {
        max_r1 = std::max(max_r1, r1);
        max_r2 = std::max(max_r2, r2);
    }
    if (std::abs(max_r1 - 1.0) > 1e-6 || std::abs(max_r2 - 1.0) > 1e-6) pass = false;
    // Symmetry: corner curves swap under lambda -> 1 - lambda.
    double sym_dev = 0.0;
    const int n = static_cast<int>(sweep.points.size());
    for (int i = 0; i < n; ++i) {
        const auto& a = sweep.points[i];
        const auto& b = sweep.points[n - 1 - i];
        sym_dev = std::max(sym_dev, std::abs(a.r1_star - b.r2_dstar));
        sym_dev = std::max(sym_dev, std::abs(a.r2_star - b.r1_dstar));
    }
    if (sym_dev > 1e-9) pass = false;
    double el = seconds_since(t0);
    report(9, "classical region sweep", pass,
           "max_sum=" + fmt(max_sum) + " symdev=" + fmt(sym_dev) + " t=" + fmt(el) + "s");
}

// 10. Detection threshold near 97%, and eta=1 reproduces the ideal channel
//     exactly.
static void criterion_10() {
    double star = eta_threshold(EtaPriorPolicy::kFixedReferencePrior);
    double dev = (eta_channel(1.0).probabilities() -
                  two_sender_balanced_channel().probabilities())
                     .cwiseAbs()
                     .maxCoeff();
    bool pass = std::abs(star - 0.97) <= 0.005 && dev == 0.0;
    report(10, "detection-efficiency threshold", pass,
           "eta*=" + fmt(star) + " ideal dev=" + fmt(dev));
}

// 11. Visibility model: ideal value, monotonicity, and the operating point.
static void criterion_11() {
    double ideal = ba_mac_rate_sum(visibility_channel(1.0, 1.0)).value_bits;
    RealVec prior = balanced_optimal_prior_joint();
    bool monotone = true;
    RealMat grid(21, 21);
    for (int i = 0; i <= 20; ++i)
        for (int k = 0; k <= 20; ++k)
            grid(i, k) = channel_mutual_information(visibility_channel(i / 20.0, k / 20.0), prior);
    for (int i = 1; i <= 20 && monotone; ++i)
        for (int k = 0; k <= 20; ++k)
            if (grid(i, k) < grid(i - 1, k) - 1e-12) monotone = false;
    for (int i = 0; i <= 20 && monotone; ++i)
        for (int k = 1; k <= 20; ++k)
            if (grid(i, k) < grid(i, k - 1) - 1e-12) monotone = false;
    double operating = ba_mac_rate_sum(visibility_channel(0.995, 0.982)).value_bits;
    bool pass = std::abs(ideal - std::log2(17.0 / 8.0)) <= 1e-6 && monotone &&
                operating > 1.0 && operating < 1.0875;
    report(11, "visibility model", pass,
           "ideal=" + fmt(ideal) + " monotone=" + (monotone ? std::string("yes") : "no") +
               " at(0.995,0.982)=" + fmt(operating));
}

// 12. Monte Carlo and error propagation at the reference sample sizes.
static void criterion_12() {
    auto t0 = std::chrono::steady_clock::now();
    TransitionMatrix realistic = visibility_channel(0.995, 0.982);
    RealVec prior = balanced_optimal_prior_joint();
    double sr1 = std::sqrt(variance_channel_characterization(realistic, prior, 1e5));
    double sr2 = std::sqrt(variance_joint_conservative(realistic, prior, 680, 600));

    // 100 seeded ideal runs at m = 1e6, n = 1e4.
    TransitionMatrix ideal = two_sender_balanced_channel();
    ExperimentConfig config;
    config.random_bits = 10000;
    config.counts_per_setting = 1000000;
    double mean = 0.0, var = 0.0;
    std::vector<double> vals;
    for (int run = 0; run < 100; ++run) {
        config.seed = 5000 + run;
        vals.push_back(monte_carlo_joint(config, ideal, prior).empirical_bits);
        mean += vals.back();
    }
    mean /= vals.size();
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= (vals.size() - 1);
    double sd = std::sqrt(var);
    double target = std::log2(17.0 / 8.0);
    double el = seconds_since(t0);
    // The plug-in estimator carries a small finite-sample bias (reported
    // here, not hidden); the mean must sit within three per-run standard
    // errors of the ideal value.
    bool pass = sr1 >= 0.001 && sr1 <= 0.003 && sr2 >= 0.0055 && sr2 <= 0.0165 &&
                std::abs(mean - target) <= 3.0 * sd && el < 120.0;
    report(12, "Monte Carlo & error propagation", pass,
           "sqrtVR1=" + fmt(sr1) + " sqrtVR2=" + fmt(sr2) + " bias=" + fmt(mean - target) +
               " sd=" + fmt(sd) + " t=" + fmt(el) + "s");
}

// 13. Grid oracle agrees with the MAC solver on random and protocol channels.
static void criterion_13() {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.02, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        RealMat p(3, 4);
        for (int x = 0; x < 4; ++x) {
            double total = 0;
            for (int y = 0; y < 3; ++y) {
                p(y, x) = u(gen);
                total += p(y, x);
            }
            p.col(x) /= total;
        }
        TransitionMatrix tm({2, 2}, p);
        worst = std::max(worst,
                         std::abs(grid_oracle_rate_sum(tm, 401) - ba_mac_rate_sum(tm).value_bits));
    }
    for (auto maker : {+[] { return assisted_channel(2); },
                       +[] { return two_sender_balanced_channel(); },
                       +[] { return eta_channel(0.95); },
                       +[] { return visibility_channel(0.99, 0.97); }}) {
        TransitionMatrix tm = maker();
        worst = std::max(worst,
                         std::abs(grid_oracle_rate_sum(tm, 401) - ba_mac_rate_sum(tm).value_bits));
    }
    report(13, "grid oracle vs BA", worst <= 2e-4, "worst dev=" + fmt(worst));
}

// 14. Lemma-5 scan: lattice-only maxima and no advantage at alpha = 0.
static void criterion_14() {
    std::mt19937_64 gen(14);
    std::uniform_real_distribution<double> uq(0.2, 0.95), ut(0.25, M_PI / 2 - 0.25);
    bool pass = true;
    for (int t = 0; t < 5; ++t) {
        double q = uq(gen), th = ut(gen);
        AlphaBetaScan scan = lemma_alpha_beta_scan(q, th, 121);
        if (scan.maxima.empty()) pass = false;
        for (const auto& m : scan.maxima)
            if (m.distance_to_pi_lattice > scan.grid_spacing) pass = false;
        if (acc_info_alpha_zero_max(q, th) > 1.0 + 1e-9) pass = false;
    }
    report(14, "phase-lattice maxima / alpha=0 bound", pass, "");
}

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    std::printf("%d/14 criteria passed (%.1f s total)\n", 14 - g_failures,
                seconds_since(t0));
    return g_failures;
}
