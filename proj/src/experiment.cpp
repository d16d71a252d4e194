#include "spmac/experiment.hpp"

#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "spmac/capacity.hpp"

namespace spmac {

namespace {

Vec balanced_initial_amplitudes() {
    Vec amp(3);
    amp << std::sqrt(0.5), 0.5, 0.5;
    return amp;
}

std::vector<Vec> balanced_decoding_vectors() {
    // Port basis: port 0 reads the symmetric Sagnac output, ports 1 and 2 the
    // two MZ outputs. In the {vac, e1, e2, e3} basis:
    Vec b0 = Vec::Zero(4), b1 = Vec::Zero(4), b2 = Vec::Zero(4);
    b0(2) = std::sqrt(0.5);
    b0(3) = std::sqrt(0.5);
    b1(1) = std::sqrt(0.5);
    b1(2) = -0.5;
    b1(3) = 0.5;
    b2(1) = -std::sqrt(0.5);
    b2(2) = -0.5;
    b2(3) = 0.5;
    return {b0, b1, b2};
}

}  // namespace

BalancedProtocol two_sender_balanced_protocol() {
    PureState initial = PureState::on_paths(3, balanced_initial_amplitudes());
    SenderEncoding s1;
    s1.operations = {NpeOperation::identity(), NpeOperation::phase(M_PI)};
    s1.target_path = 2;
    s1.prior = RealVec::Constant(2, 0.5);
    SenderEncoding s2;
    s2.operations = {NpeOperation::identity(), NpeOperation::phase(M_PI)};
    s2.target_path = 1;
    s2.prior = RealVec::Constant(2, 0.5);
    Povm povm = Povm::projective(initial.space(), balanced_decoding_vectors(),
                                 {"port0", "port1", "port2"});
    return {std::move(initial), EncodingStrategy({s1, s2}), std::move(povm)};
}

TransitionMatrix two_sender_balanced_channel() {
    // Exact dyadic entries; build_mac of two_sender_balanced_protocol()
    // reproduces this to machine precision (see tests).
    RealMat p(3, 4);
    p.col(0) << 0.5, 0.25, 0.25;  // x = 00
    p.col(1) << 0.5, 0.25, 0.25;  // x = 01
    p.col(2) << 0.0, 1.0, 0.0;    // x = 10
    p.col(3) << 0.0, 0.0, 1.0;    // x = 11
    return TransitionMatrix({2, 2}, std::move(p));
}

void balanced_optimal_prior(RealVec& prior1, RealVec& prior2) {
    prior1 = RealVec(2);
    prior1 << 2.0 / 17.0, 15.0 / 17.0;
    prior2 = RealVec::Constant(2, 0.5);
}

RealVec balanced_optimal_prior_joint() {
    RealVec p1, p2;
    balanced_optimal_prior(p1, p2);
    RealVec jp(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) jp(a * 2 + b) = p1(a) * p2(b);
    return jp;
}

TransitionMatrix eta_channel(double eta) {
    require(eta >= 0.0 && eta <= 1.0, "eta_channel: eta outside [0,1]");
    RealMat p(3, 4);
    // columns x = (x1, x2), x1 major
    p.col(0) << 1.0 - eta / 2.0, eta / 4.0, eta / 4.0;  // 00
    p.col(1) << 1.0 - eta / 2.0, eta / 4.0, eta / 4.0;  // 01
    p.col(2) << 1.0 - eta, eta, 0.0;                    // 10
    p.col(3) << 1.0 - eta, 0.0, eta;                    // 11
    return TransitionMatrix({2, 2}, std::move(p));
}

double eta_threshold(EtaPriorPolicy policy) {
    RealVec prior = balanced_optimal_prior_joint();
    auto rate = [&](double eta) {
        TransitionMatrix tm = eta_channel(eta);
        if (policy == EtaPriorPolicy::kFixedReferencePrior)
            return channel_mutual_information(tm, prior);
        BaOptions opts;
        opts.restarts = 8;
        opts.seed = 7;
        return ba_mac_rate_sum(tm, opts).value_bits;
    };
    double lo = 0.5, hi = 1.0;
    require(rate(hi) > 1.0 && rate(lo) < 1.0, "eta_threshold: no crossing bracketed");
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        if (rate(mid) >= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

TransitionMatrix visibility_channel(double vs, double vz) {
    require(vs >= 0.0 && vs <= 1.0 && vz >= 0.0 && vz <= 1.0,
            "visibility_channel: visibility outside [0,1]");
    const Vec amp = balanced_initial_amplitudes();
    const auto ports = balanced_decoding_vectors();
    // Cross-term retention factors from the phase-diffusion averages: the
    // inner differential noise chi has E[e^{i chi}] = vs and is split +-chi/2
    // over paths 2 and 3, the outer noise has E[e^{i theta}] = vz.
    const double m23 = vs;
    const double m1x = vz * std::pow(vs, 0.25);
    RealMat p(3, 4);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
            Vec psi = amp;
            if (x1) psi(1) *= -1.0;  // sender 1 on path 2
            if (x2) psi(0) *= -1.0;  // sender 2 on path 1
            for (int y = 0; y < 3; ++y) {
                const Vec& b = ports[y];
                auto term = [&](int i) { return (b(i + 1) * psi(i)).real(); };
                double v = term(0) * term(0) + term(1) * term(1) + term(2) * term(2);
                v += 2.0 * m1x * term(0) * (term(1) + term(2));
                v += 2.0 * m23 * term(1) * term(2);
                p(y, x1 * 2 + x2) = v;
            }
        }
    return TransitionMatrix({2, 2}, std::move(p));
}

double g2_from_counts(double c_iss, double c_i, double c_is, double c_is2) {
    require(c_is > 0.0 && c_is2 > 0.0, "g2_from_counts: zero denominator");
    return c_iss * c_i / (c_is * c_is2);
}

double phase_plate_shift(double alpha, double d, double lambda, double ng) {
    require(d > 0.0 && lambda > 0.0 && ng >= 1.0, "phase_plate_shift: unphysical parameters");
    double sa = std::sin(alpha);
    return 2.0 * M_PI * d / lambda *
           (std::sqrt(ng * ng - sa * sa) - std::cos(alpha) - (ng - 1.0));
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["eta"] = eta;
    j["v_sagnac"] = v_sagnac;
    j["v_mz"] = v_mz;
    j["counts_per_setting"] = counts_per_setting;
    j["random_bits"] = random_bits;
    j["seed"] = seed;
    return j.dump();
}

std::string CountTable::to_csv() const {
    std::ostringstream os;
    for (size_t i = 0; i < input_sizes.size(); ++i) os << "x" << (i + 1) << ",";
    os << "y,count\n";
    for (int flat = 0; flat < counts.rows(); ++flat) {
        std::vector<int> x(input_sizes.size());
        int rest = flat;
        for (int i = static_cast<int>(input_sizes.size()) - 1; i >= 0; --i) {
            x[i] = rest % input_sizes[i];
            rest /= input_sizes[i];
        }
        for (int y = 0; y < counts.cols(); ++y) {
            for (int xi : x) os << xi << ",";
            os << y << "," << counts(flat, y) << "\n";
        }
    }
    return os.str();
}

double variance_channel_characterization(const TransitionMatrix& tm, const RealVec& prior,
                                         double n_per_setting) {
    require(n_per_setting > 0.0, "variance: need positive counts");
    RealVec q = tm.probabilities() * prior;
    double v = 0.0;
    for (int x = 0; x < tm.num_inputs(); ++x)
        for (int y = 0; y < tm.num_outputs(); ++y) {
            double p = tm.probabilities()(y, x);
            if (p <= 0.0 || q(y) <= 0.0) continue;
            double d = prior(x) * (std::log2(p) - std::log2(q(y)));
            v += d * d * p * (1.0 - p) / n_per_setting;
        }
    return v;
}

double variance_joint_conservative(const TransitionMatrix& tm, const RealVec& prior, double n,
                               double m) {
    require(n > 0.0 && m > 0.0, "variance: need positive counts");
    RealVec q = tm.probabilities() * prior;
    double total = n * m;
    double info = channel_mutual_information(tm, prior);
    double v = 0.0;
    for (int x = 0; x < tm.num_inputs(); ++x)
        for (int y = 0; y < tm.num_outputs(); ++y) {
            double pyx = tm.probabilities()(y, x);
            double pxy = prior(x) * pyx;
            if (pxy <= 0.0) continue;
            double bracket = std::log2(prior(x)) + std::log2(q(y)) - std::log2(pxy) + info;
            double var_n = m * m * pyx * pyx * n * prior(x) * (1.0 - prior(x)) +
                           n * m * prior(x) * pyx * (1.0 - pyx);
            v += bracket * bracket * var_n / (total * total);
        }
    return v;
}

double variance_joint_delta(const TransitionMatrix& tm, const RealVec& prior, double n, double m) {
    require(n > 0.0 && m > 0.0, "variance: need positive counts");
    RealVec q = tm.probabilities() * prior;
    const int nx = tm.num_inputs(), ny = tm.num_outputs();
    const double log2e = 1.4426950408889634;
    // Input-sampling part: dI/dp(x) = D(p(.|x) || q), multinomial covariance.
    RealVec d(nx);
    for (int x = 0; x < nx; ++x) {
        double s = 0.0;
        for (int y = 0; y < ny; ++y) {
            double p = tm.probabilities()(y, x);
            if (p > 0.0 && q(y) > 0.0) s += p * (std::log2(p) - std::log2(q(y)));
        }
        d(x) = s;
    }
    RealMat cov_in(nx, nx);
    for (int x = 0; x < nx; ++x)
        for (int x2 = 0; x2 < nx; ++x2)
            cov_in(x, x2) = (((x == x2) ? prior(x) : 0.0) - prior(x) * prior(x2)) / n;
    double v = d.dot(cov_in * d);
    // Second-order input term: at realistic n the curvature fluctuation of
    // the output-marginal entropy is not negligible. V2 = tr((H C)^2) / 2
    // with H the Hessian of I with respect to the input marginal.
    RealMat hess(nx, nx);
    for (int x = 0; x < nx; ++x)
        for (int x2 = 0; x2 < nx; ++x2) {
            double s = 0.0;
            for (int y = 0; y < ny; ++y)
                if (q(y) > 0.0)
                    s += tm.probabilities()(y, x) * tm.probabilities()(y, x2) / q(y);
            hess(x, x2) = -log2e * s;
        }
    RealMat hc = hess * cov_in;
    v += 0.5 * (hc * hc).trace();
    // Output part: per-column multinomial with expected N_x = n m p(x) counts.
    for (int x = 0; x < nx; ++x) {
        double n_x = n * m * prior(x);
        if (n_x <= 0.0) continue;
        double s1 = 0.0, s2 = 0.0;
        for (int y = 0; y < ny; ++y) {
            double p = tm.probabilities()(y, x);
            if (p <= 0.0 || q(y) <= 0.0) continue;
            double g = prior(x) * (std::log2(p) - std::log2(q(y)));
            s1 += p * g * g;
            s2 += p * g;
        }
        v += (s1 - s2 * s2) / n_x;
    }
    return v;
}

std::string MonteCarloReport::to_json(const ExperimentConfig& config) const {
    nlohmann::json j;
    j["schema"] = "spmac/1";
    j["I_bits"] = empirical_bits;
    j["true_bits"] = true_bits;
    j["bias"] = bias;
    j["V_R1"] = v_r1;
    j["V_R2"] = v_r2;
    j["V_R2_delta"] = v_r2_delta;
    nlohmann::json pr = nlohmann::json::array();
    for (int i = 0; i < joint_prior.size(); ++i) pr.push_back(joint_prior(i));
    j["prior"] = pr;
    j["seed"] = seed;
    j["config"] = nlohmann::json::parse(config.to_json());
    return j.dump();
}

MonteCarloReport monte_carlo_joint(const ExperimentConfig& config, const TransitionMatrix& tm,
                                   const RealVec& prior) {
    require(config.counts_per_setting >= 1 && config.random_bits >= 1,
            "monte_carlo_joint: need positive sample sizes");
    require(prior.size() == tm.num_inputs(), "monte_carlo_joint: prior size mismatch");
    std::mt19937_64 gen(derive_seed(config.seed, 0));
    const int nx = tm.num_inputs(), ny = tm.num_outputs();

    // Sample how many of the n random input tuples landed on each setting.
    std::vector<long long> n_x(nx, 0);
    {
        long long remaining = config.random_bits;
        double mass = 1.0;
        for (int x = 0; x < nx - 1 && remaining > 0; ++x) {
            double p = std::min(1.0, prior(x) / mass);
            if (p >= 1.0) {
                n_x[x] = remaining;
                remaining = 0;
                break;
            }
            std::binomial_distribution<long long> bin(remaining, p);
            n_x[x] = bin(gen);
            remaining -= n_x[x];
            mass -= prior(x);
        }
        n_x[nx - 1] += remaining;
    }

    // Blocks with the same setting pool into one multinomial draw.
    CountTable table;
    table.input_sizes = tm.input_sizes();
    table.counts.setZero(nx, ny);
    table.totals_per_setting.assign(nx, 0);
    for (int x = 0; x < nx; ++x) {
        long long shots = n_x[x] * config.counts_per_setting;
        table.totals_per_setting[x] = shots;
        long long remaining = shots;
        double mass = 1.0;
        for (int y = 0; y < ny - 1 && remaining > 0; ++y) {
            double p = std::min(1.0, tm.probabilities()(y, x) / mass);
            std::binomial_distribution<long long> bin(remaining, p);
            long long c = (p >= 1.0) ? remaining : bin(gen);
            table.counts(x, y) = c;
            remaining -= c;
            mass -= tm.probabilities()(y, x);
        }
        table.counts(x, ny - 1) += remaining;
    }

    const double total = static_cast<double>(config.random_bits) * config.counts_per_setting;
    RealMat joint(nx, ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) joint(x, y) = table.counts(x, y) / total;
    JointDistribution jd(tm.input_sizes(), joint);

    MonteCarloReport rep;
    rep.counts = std::move(table);
    rep.empirical_bits = mutual_information(jd);
    rep.true_bits = channel_mutual_information(tm, prior);
    rep.bias = rep.empirical_bits - rep.true_bits;
    rep.v_r1 = variance_channel_characterization(
        tm, prior, static_cast<double>(config.counts_per_setting) * config.random_bits / nx);
    rep.v_r2 = variance_joint_conservative(tm, prior, static_cast<double>(config.random_bits),
                                       static_cast<double>(config.counts_per_setting));
    rep.v_r2_delta = variance_joint_delta(tm, prior, static_cast<double>(config.random_bits),
                                          static_cast<double>(config.counts_per_setting));
    rep.joint_prior = prior;
    rep.seed = config.seed;
    return rep;
}

}  // namespace spmac
