#include "spmac/accessible.hpp"

#include <nlohmann/json.hpp>

namespace spmac {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // log2(e)

// d(u log2 u)/dsigma given du/dsigma; safe at u -> 0 where the limit is 0.
double dxlog2x(double u, double du) {
    if (u <= 1e-300) return 0.0;
    return du * (std::log2(u) + kLog2e);
}

double safe_log2(double u) { return u > 0.0 ? std::log2(u) : 0.0; }

}  // namespace

void SymmetricPovmParams::validate() const {
    require(!pairs.empty(), "SymmetricPovmParams: empty");
    double w = 0.0, ws = 0.0;
    for (const auto& p : pairs) {
        require(p.weight >= -tol::kProb, "SymmetricPovmParams: negative weight");
        require(p.sigma >= -tol::kProb && p.sigma <= 1.0 + tol::kProb,
                "SymmetricPovmParams: sigma outside [0,1]");
        w += p.weight;
        ws += p.weight * p.sigma;
    }
    require(std::abs(w - 1.0) <= tol::kNorm, "SymmetricPovmParams: weights must sum to 1");
    require(std::abs(ws - 0.5) <= tol::kNorm, "SymmetricPovmParams: sum w*sigma must be 1/2");
}

CqEnsemble OneSenderScenario::ensemble() const {
    require(q >= 0.0 && q <= 1.0, "OneSenderScenario: q outside [0,1]");
    Vec amp(2);
    amp << std::cos(theta), std::sin(theta);
    DensityOperator psi = PureState::on_paths(2, amp).to_density();
    CqEnsemble ens;
    ens.priors = RealVec(3);
    ens.priors << 1.0 - q, q / 2.0, q / 2.0;
    ens.states = {apply_npe(NpeOperation::blocking(), 2, psi), psi,
                  apply_npe(NpeOperation::phase(alpha), 2, psi)};
    return ens;
}

CqEnsemble TwoSenderTernaryScenario::ensemble() const {
    require(q >= 0.0 && q <= 1.0 && q_prime >= 0.0 && q_prime <= 1.0,
            "TwoSenderTernaryScenario: priors outside [0,1]");
    Vec amp(2);
    amp << std::cos(theta), std::sin(theta);
    DensityOperator psi = PureState::on_paths(2, amp).to_density();
    CqEnsemble ens;
    ens.priors = RealVec(6);
    ens.states.clear();
    const double p1[2] = {1.0 - q, q};
    const double p2[3] = {1.0 - q_prime, q_prime / 2.0, q_prime / 2.0};
    const NpeOperation ops1[2] = {NpeOperation::blocking(), NpeOperation::identity()};
    const NpeOperation ops2[3] = {NpeOperation::blocking(), NpeOperation::identity(),
                                  NpeOperation::phase(alpha)};
    int idx = 0;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 3; ++x2) {
            ens.priors(idx) = p1[x1] * p2[x2];
            ens.states.push_back(apply_npe(ops2[x2], 2, apply_npe(ops1[x1], 1, psi)));
            ++idx;
        }
    return ens;
}

TransitionMatrix TwoSenderTernaryScenario::channel() const {
    ModeSpace space(2);
    Vec amp(2);
    amp << std::cos(theta), std::sin(theta);
    PureState psi = PureState::on_paths(2, amp);
    SenderEncoding s1;
    s1.operations = {NpeOperation::blocking(), NpeOperation::identity()};
    s1.target_path = 1;
    s1.prior = RealVec(2);
    s1.prior << 1.0 - q, q;
    SenderEncoding s2;
    s2.operations = {NpeOperation::blocking(), NpeOperation::identity(),
                     NpeOperation::phase(alpha)};
    s2.target_path = 2;
    s2.prior = RealVec(3);
    s2.prior << 1.0 - q_prime, q_prime / 2.0, q_prime / 2.0;
    Vec vac = Vec::Zero(3);
    vac(0) = 1.0;
    Vec plus(3), minus(3);
    plus << 0.0, std::sqrt(0.5), std::sqrt(0.5);
    minus << 0.0, std::sqrt(0.5), -std::sqrt(0.5);
    Povm povm = Povm::projective(space, {vac, plus, minus}, {"vac", "plus", "minus"});
    return build_mac(psi, EncodingStrategy({s1, s2}), povm);
}

double j_one_sender(double sigma, double beta, const OneSenderScenario& sc) {
    require(sigma >= 0.0 && sigma <= 1.0, "j_one_sender: sigma outside [0,1]");
    require(sc.q >= 0.0 && sc.q <= 1.0, "j_one_sender: q outside [0,1]");
    const double q = sc.q;
    const double c = std::cos(sc.theta), s = std::sin(sc.theta);
    const double sb = 1.0 - sigma;
    const double root = std::sqrt(sb * sigma);
    // |sqrt(1-sigma) sin + e^{i phi} sqrt(sigma) cos|^2 at phi = beta and beta-alpha.
    const double a = sb * s * s + sigma * c * c + 2.0 * root * s * c * std::cos(beta);
    const double b = sb * s * s + sigma * c * c + 2.0 * root * s * c * std::cos(beta - sc.alpha);
    const double kappa = q * sb * s * s +
                         q * (std::cos(beta) + std::cos(beta - sc.alpha)) * root * c * s +
                         sigma * c * c;
    double j = q * xlog2x(a) + q * xlog2x(b) + 2.0 * (1.0 - q) * xlog2x(sigma * c * c) -
               2.0 * xlog2x(kappa);
    if (q < 1.0) j -= (1.0 - q) * s * s * std::log2(1.0 - q);
    return j;
}

double j_one_sender_pi(double sigma, double q, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double rp = std::sqrt(1.0 - sigma) * s + std::sqrt(sigma) * c;
    const double rm = std::sqrt(1.0 - sigma) * s - std::sqrt(sigma) * c;
    const double kappa = q * (1.0 - sigma) * s * s + sigma * c * c;
    double j = q * xlog2x(rp * rp) + q * xlog2x(rm * rm) +
               2.0 * (1.0 - q) * xlog2x(sigma * c * c) - 2.0 * xlog2x(kappa);
    if (q < 1.0) j -= (1.0 - q) * s * s * std::log2(1.0 - q);
    return j;
}

double dj_one_sender_pi_dsigma(double sigma, double q, double theta) {
    require(sigma > 0.0 && sigma < 1.0, "dj: sigma must be interior");
    const double c = std::cos(theta), s = std::sin(theta);
    const double sq = std::sqrt(sigma), sqb = std::sqrt(1.0 - sigma);
    const double rp = sqb * s + sq * c;
    const double rm = sqb * s - sq * c;
    const double drp = -s / (2.0 * sqb) + c / (2.0 * sq);
    const double drm = -s / (2.0 * sqb) - c / (2.0 * sq);
    const double kappa = q * (1.0 - sigma) * s * s + sigma * c * c;
    const double dkappa = c * c - q * s * s;
    double d = q * dxlog2x(rp * rp, 2.0 * rp * drp) + q * dxlog2x(rm * rm, 2.0 * rm * drm) +
               2.0 * (1.0 - q) * dxlog2x(sigma * c * c, c * c) - 2.0 * dxlog2x(kappa, dkappa);
    return d;
}

AccInfoResult acc_info_one_sender(double q, double theta) {
    require(q >= 0.0 && q <= 1.0, "acc_info_one_sender: q outside [0,1]");
    require(theta >= 0.0 && theta <= M_PI / 2.0 + 1e-12, "acc_info_one_sender: theta range");
    auto J = [&](double sg) { return j_one_sender_pi(sg, q, theta); };
    auto dJ = [&](double sg) { return dj_one_sender_pi_dsigma(sg, q, theta); };

    AccInfoResult best;
    best.bits = 0.5 * (J(0.0) + J(1.0));
    best.regime = MeasurementRegime::kWhichPath;
    best.measurement = {{0.5, 0.0}, {0.5, 1.0}};

    const double half = J(0.5);
    if (half > best.bits) {
        best.bits = half;
        best.regime = MeasurementRegime::kUniform;
        best.measurement = {{1.0, 0.5}};
        best.sigma_star.reset();
    }

    // Regime 2: chord from sigma = 0 tangent to J at sigma* in (1/2, 1).
    const double j0 = J(0.0);
    auto g = [&](double sg) { return j0 + sg * dJ(sg) - J(sg); };
    const double lo = 0.5, hi = 1.0 - 1e-9;
    const int scan = 64;
    double prev_s = lo, prev_g = g(lo);
    for (int i = 1; i <= scan; ++i) {
        double cur_s = lo + (hi - lo) * i / scan;
        double cur_g = g(cur_s);
        if (prev_g == 0.0 || prev_g * cur_g < 0.0) {
            double a = prev_s, b = cur_s, ga = prev_g;
            while (b - a > 1e-12) {
                double mid = 0.5 * (a + b);
                double gm = g(mid);
                if (gm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (ga * gm < 0.0)
                    b = mid;
                else {
                    a = mid;
                    ga = gm;
                }
            }
            double sstar = 0.5 * (a + b);
            double val = j0 + 0.5 * dJ(sstar);
            if (val > best.bits) {
                best.bits = val;
                best.regime = MeasurementRegime::kMixed;
                best.sigma_star = sstar;
                double w_star = 0.5 / sstar;
                best.measurement = {{1.0 - w_star, 0.0}, {w_star, sstar}};
            }
        }
        prev_s = cur_s;
        prev_g = cur_g;
    }
    return best;
}

Povm materialize_symmetric_povm(const AccInfoResult& result) {
    ModeSpace space(2);
    std::vector<Mat> elems;
    std::vector<std::string> labels;
    Mat vac = Mat::Zero(3, 3);
    vac(0, 0) = 1.0;
    elems.push_back(vac);
    labels.push_back("vac");
    int idx = 0;
    for (const auto& [w, sigma] : result.measurement) {
        if (w <= 0.0) continue;
        // alpha = beta = pi pair: |pi>   = -sqrt(sigma)|e1> + sqrt(1-sigma)|e2>
        //                         |pi'>  =  sqrt(sigma)|e1> + sqrt(1-sigma)|e2>
        Vec v1 = Vec::Zero(3), v2 = Vec::Zero(3);
        v1(1) = -std::sqrt(sigma);
        v1(2) = std::sqrt(1.0 - sigma);
        v2(1) = std::sqrt(sigma);
        v2(2) = std::sqrt(1.0 - sigma);
        elems.push_back(w * (v1 * v1.adjoint()));
        elems.push_back(w * (v2 * v2.adjoint()));
        labels.push_back("pair" + std::to_string(idx) + "-");
        labels.push_back("pair" + std::to_string(idx) + "+");
        ++idx;
    }
    return Povm(space, std::move(elems), std::move(labels));
}

namespace {

// Regime-3 closed form and its exact partial derivatives (artifact
// convention: the encoding acts on the sin^2 probability mass).
double iacc3(double q, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    const double sin2t = std::sin(2.0 * theta);
    double v = q - q * binary_entropy(std::min(1.0, (1.0 + sin2t) / 2.0));
    v += (1.0 - q) * xlog2x(c2);
    v -= xlog2x(q * s2 + c2);
    if (q < 1.0 && s2 > 0.0) v -= (1.0 - q) * s2 * std::log2(1.0 - q);
    return v;
}

double diacc3_dq(double q, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    const double sin2t = std::sin(2.0 * theta);
    return 1.0 - binary_entropy(std::min(1.0, (1.0 + sin2t) / 2.0)) - c2 * safe_log2(c2) +
           s2 * std::log2((1.0 - q) / (q * s2 + c2));
}

double diacc3_dtheta(double q, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    const double sin2t = std::sin(2.0 * theta);
    const double cos2t = std::cos(2.0 * theta);
    double t = 0.0;
    if (1.0 - sin2t > 1e-300) t = q * cos2t * std::log2((1.0 + sin2t) / (1.0 - sin2t));
    return t - (1.0 - q) * sin2t * std::log2((1.0 - q) * c2 / (q * s2 + c2));
}

}  // namespace

std::string OneSenderOptimum::to_json() const {
    nlohmann::json j;
    j["schema"] = "spmac/1";
    j["target"] = "one_sender_accessible_information";
    j["value_bits"] = bits;
    j["argmax"] = {{"q", q_star}, {"theta", theta_star}, {"cos2_theta", cos2_theta_star}};
    j["residuals"] = {residual_q, residual_theta};
    j["regime"] = "uniform";
    j["converged"] = newton_converged;
    return j.dump();
}

OneSenderOptimum optimize_one_sender() {
    // Coarse grid seed over the regime-3 expression.
    double best_q = 0.8, best_t = 0.8, best_v = -1.0;
    for (int i = 1; i < 41; ++i)
        for (int k = 1; k < 41; ++k) {
            double q = i / 41.0, t = (M_PI / 2.0) * k / 41.0;
            double v = iacc3(q, t);
            if (v > best_v) {
                best_v = v;
                best_q = q;
                best_t = t;
            }
        }

    double q = best_q, t = best_t;
    bool converged = false;
    auto normF = [&](double qq, double tt) {
        double fq = diacc3_dq(qq, tt), ft = diacc3_dtheta(qq, tt);
        return std::max(std::abs(fq), std::abs(ft));
    };
    for (int it = 0; it < 200; ++it) {
        double fq = diacc3_dq(q, t), ft = diacc3_dtheta(q, t);
        if (std::max(std::abs(fq), std::abs(ft)) < 1e-12) {
            converged = true;
            break;
        }
        const double h = 1e-7;
        double jqq = (diacc3_dq(q + h, t) - diacc3_dq(q - h, t)) / (2 * h);
        double jqt = (diacc3_dq(q, t + h) - diacc3_dq(q, t - h)) / (2 * h);
        double jtq = (diacc3_dtheta(q + h, t) - diacc3_dtheta(q - h, t)) / (2 * h);
        double jtt = (diacc3_dtheta(q, t + h) - diacc3_dtheta(q, t - h)) / (2 * h);
        double det = jqq * jtt - jqt * jtq;
        if (std::abs(det) < 1e-300) break;
        double dq = (-fq * jtt + ft * jqt) / det;
        double dt = (-jqq * ft + jtq * fq) / det;
        double step = 1.0;
        double base = normF(q, t);
        while (step > 1e-6) {
            double qn = std::clamp(q + step * dq, 1e-6, 1.0 - 1e-9);
            double tn = std::clamp(t + step * dt, 1e-6, M_PI / 2.0 - 1e-6);
            if (normF(qn, tn) < base) {
                q = qn;
                t = tn;
                break;
            }
            step *= 0.5;
        }
        if (step <= 1e-6) break;
    }

    OneSenderOptimum opt;
    opt.q_star = q;
    opt.theta_star = t;
    opt.cos2_theta_star = std::cos(t) * std::cos(t);
    opt.bits = iacc3(q, t);
    opt.residual_q = diacc3_dq(q, t);
    opt.residual_theta = diacc3_dtheta(q, t);
    opt.newton_converged = converged;

    // Cross-check against a 401x401 grid of the full three-regime formula;
    // fall back to the grid point if Newton wandered off.
    double grid_best = -1.0, grid_q = q, grid_t = t;
    for (int i = 1; i < 401; ++i) {
        double qq = i / 401.0;
        for (int k = 1; k < 401; ++k) {
            double tt = (M_PI / 2.0) * k / 401.0;
            double v = acc_info_one_sender(qq, tt).bits;
            if (v > grid_best) {
                grid_best = v;
                grid_q = qq;
                grid_t = tt;
            }
        }
    }
    if (!converged || opt.bits < grid_best - 1e-9) {
        opt.q_star = grid_q;
        opt.theta_star = grid_t;
        opt.cos2_theta_star = std::cos(grid_t) * std::cos(grid_t);
        opt.bits = grid_best;
        opt.newton_converged = false;
    }
    return opt;
}

AlphaBetaScan lemma_alpha_beta_scan(double q, double theta, int grid, double sigma) {
    require(grid >= 9, "lemma_alpha_beta_scan: grid too small");
    const int g = grid - 1;  // grid points cover [0, 2pi] with both endpoints
    const double step = 2.0 * M_PI / g;
    RealMat val(g, g);
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) {
            OneSenderScenario sc{q, theta, i * step};
            val(i, k) = j_one_sender(sigma, k * step, sc);
        }
    AlphaBetaScan out;
    out.grid_spacing = step;
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k) {
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dk = -1; dk <= 1; ++dk) {
                    if (di == 0 && dk == 0) continue;
                    if (val((i + di + g) % g, (k + dk + g) % g) > val(i, k) + 1e-13) {
                        is_max = false;
                        break;
                    }
                }
            if (!is_max) continue;
            double alpha = i * step, beta = k * step;
            auto lattice_dist = [](double x) {
                double r = std::fmod(x, M_PI);
                if (r < 0) r += M_PI;
                return std::min(r, M_PI - r);
            };
            out.maxima.push_back(
                {alpha, beta, val(i, k), std::max(lattice_dist(alpha), lattice_dist(beta))});
        }
    return out;
}

double acc_info_alpha_zero_max(double q, double theta, int beta_grid, int sigma_grid) {
    OneSenderScenario sc{q, theta, 0.0};
    // Envelope of max_beta J(sigma, beta; alpha=0) over two-point sigma
    // mixtures meeting sum w sigma = 1/2.
    std::vector<double> jmax(sigma_grid);
    for (int i = 0; i < sigma_grid; ++i) {
        double sg = static_cast<double>(i) / (sigma_grid - 1);
        double m = -1e300;
        for (int k = 0; k < beta_grid; ++k)
            m = std::max(m, j_one_sender(sg, 2.0 * M_PI * k / beta_grid, sc));
        jmax[i] = m;
    }
    const int mid = (sigma_grid - 1) / 2;
    double best = jmax[mid];
    for (int i = 0; i <= mid; ++i)
        for (int k = mid; k < sigma_grid; ++k) {
            double s1 = static_cast<double>(i) / (sigma_grid - 1);
            double s2 = static_cast<double>(k) / (sigma_grid - 1);
            double v;
            if (k == i)
                v = jmax[i];
            else {
                double t = (0.5 - s1) / (s2 - s1);
                v = (1.0 - t) * jmax[i] + t * jmax[k];
            }
            best = std::max(best, v);
        }
    return best;
}

double acc_info_two_sender_ternary(double q, double qp, double theta) {
    require(q >= 0.0 && q <= 1.0 && qp >= 0.0 && qp <= 1.0,
            "acc_info_two_sender_ternary: priors outside [0,1]");
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    const double sin2t = std::sin(2.0 * theta);
    const double g1 = xlog2x(c2) + xlog2x(s2) - s2;  // c2 log c2 + s2 log(s2/2)
    const double g2 = xlog2x(s2) + xlog2x(c2) - c2;  // s2 log s2 + c2 log(c2/2)
    const double xi = 1.0 - q * c2 - qp * s2;
    const double eta = 0.5 * (q * c2 + qp * s2);
    return (1.0 - q) * qp * g1 + q * (1.0 - qp) * g2 -
           q * qp * binary_entropy(std::min(1.0, (1.0 + sin2t) / 2.0)) - xlog2x(xi) -
           2.0 * xlog2x(eta);
}

RealVec two_sender_ternary_gradient(double q, double qp, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    const double sin2t = std::sin(2.0 * theta);
    const double cos2t = std::cos(2.0 * theta);
    const double h = binary_entropy(std::min(1.0, (1.0 + sin2t) / 2.0));
    const double g1 = xlog2x(c2) + xlog2x(s2) - s2;
    const double g2 = xlog2x(s2) + xlog2x(c2) - c2;
    const double xi = 1.0 - q * c2 - qp * s2;
    const double eta = 0.5 * (q * c2 + qp * s2);
    const double logratio = (xi > 0 && eta > 0) ? std::log2(xi / eta) : 0.0;
    RealVec grad(3);
    grad(0) = -qp * g1 + (1.0 - qp) * g2 - qp * h + c2 * logratio;
    grad(1) = (1.0 - q) * g1 - q * g2 - q * h + s2 * logratio;
    const double logtan2 = (c2 > 0 && s2 > 0) ? std::log2(s2 / c2) : 0.0;
    double tterm = 0.0;
    if (1.0 - sin2t > 1e-300)
        tterm = q * qp * cos2t * std::log2((1.0 + sin2t) / (1.0 - sin2t));
    grad(2) = (1.0 - q) * qp * sin2t * (logtan2 - 1.0) + q * (1.0 - qp) * sin2t * (logtan2 + 1.0) +
              tterm + (q - qp) * sin2t * ((eta > 0 && xi > 0) ? std::log2(eta / xi) : 0.0);
    return grad;
}

std::string TwoSenderTernaryOptimum::to_json() const {
    nlohmann::json j;
    j["schema"] = "spmac/1";
    j["target"] = "two_sender_ternary_rate_sum";
    j["value_bits"] = bits;
    j["argmax"] = {{"q", q_star}, {"q_prime", q_prime_star}, {"theta", theta_star}};
    j["residuals"] = {gradient_residual(0), gradient_residual(1), gradient_residual(2)};
    j["converged"] = newton_converged;
    return j.dump();
}

TwoSenderTernaryOptimum optimize_two_sender_ternary() {
    // Grid seed.
    double bq = 0.9, bqp = 0.9, bt = M_PI / 4.0, bv = -1.0;
    for (int i = 1; i < 21; ++i)
        for (int k = 1; k < 21; ++k)
            for (int l = 1; l < 21; ++l) {
                double q = i / 21.0, qp = k / 21.0, t = (M_PI / 2.0) * l / 21.0;
                double v = acc_info_two_sender_ternary(q, qp, t);
                if (v > bv) {
                    bv = v;
                    bq = q;
                    bqp = qp;
                    bt = t;
                }
            }
    Eigen::Vector3d x(bq, bqp, bt);
    bool converged = false;
    auto res_norm = [&](const Eigen::Vector3d& v) {
        return two_sender_ternary_gradient(v(0), v(1), v(2)).cwiseAbs().maxCoeff();
    };
    for (int it = 0; it < 200; ++it) {
        RealVec f = two_sender_ternary_gradient(x(0), x(1), x(2));
        if (f.cwiseAbs().maxCoeff() < 1e-11) {
            converged = true;
            break;
        }
        Eigen::Matrix3d jac;
        const double h = 1e-7;
        for (int col = 0; col < 3; ++col) {
            Eigen::Vector3d xp = x, xm = x;
            xp(col) += h;
            xm(col) -= h;
            RealVec fp = two_sender_ternary_gradient(xp(0), xp(1), xp(2));
            RealVec fm = two_sender_ternary_gradient(xm(0), xm(1), xm(2));
            jac.col(col) = (fp - fm) / (2.0 * h);
        }
        Eigen::Vector3d step = jac.fullPivLu().solve(-Eigen::Vector3d(f(0), f(1), f(2)));
        double damp = 1.0;
        double base = res_norm(x);
        bool moved = false;
        while (damp > 1e-7) {
            Eigen::Vector3d xn = x + damp * step;
            xn(0) = std::clamp(xn(0), 1e-6, 1.0 - 1e-9);
            xn(1) = std::clamp(xn(1), 1e-6, 1.0 - 1e-9);
            xn(2) = std::clamp(xn(2), 1e-6, M_PI / 2.0 - 1e-6);
            if (res_norm(xn) < base) {
                x = xn;
                moved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!moved) break;
    }

    // The optimum is symmetric (q = q', theta = pi/4): polish on that slice,
    // where the stationarity reduces to 3(2q - 1) = -log2(2(1-q)/q).
    if (std::abs(x(0) - x(1)) < 5e-3 && std::abs(x(2) - M_PI / 4.0) < 5e-3) {
        auto f1 = [](double q) { return 3.0 * (2.0 * q - 1.0) + std::log2(2.0 * (1.0 - q) / q); };
        double a = 0.5, b = 1.0 - 1e-12;
        double fa = f1(a);
        for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
            double mid = 0.5 * (a + b), fm = f1(mid);
            if (fa * fm <= 0.0)
                b = mid;
            else {
                a = mid;
                fa = fm;
            }
        }
        x(0) = x(1) = 0.5 * (a + b);
        x(2) = M_PI / 4.0;
        converged = true;
    }

    TwoSenderTernaryOptimum opt;
    opt.q_star = x(0);
    opt.q_prime_star = x(1);
    opt.theta_star = x(2);
    opt.bits = acc_info_two_sender_ternary(x(0), x(1), x(2));
    opt.gradient_residual = two_sender_ternary_gradient(x(0), x(1), x(2));
    opt.newton_converged = converged;
    return opt;
}

std::string HolevoClosedForm::to_json() const {
    nlohmann::json j;
    j["schema"] = "spmac/1";
    j["target"] = "one_sender_holevo_information";
    j["value_bits"] = chi_star;
    j["argmax"] = {{"x", x_star}};
    j["residuals"] = {transcendental_residual};
    return j.dump();
}

HolevoClosedForm holevo_one_sender_closed_form() {
    auto f = [](double x) { return binary_entropy(x) + x * std::log2((1.0 - x) / x); };
    double a = 0.5, b = 1.0 - 1e-12;
    double fa = f(a);
    while (b - a > 1e-14) {
        double mid = 0.5 * (a + b);
        double fm = f(mid);
        if (fm == 0.0) {
            a = b = mid;
            break;
        }
        if (fa * fm < 0.0)
            b = mid;
        else {
            a = mid;
            fa = fm;
        }
    }
    HolevoClosedForm out;
    out.x_star = 0.5 * (a + b);
    out.chi_star = 2.0 * out.x_star * binary_entropy(out.x_star);
    out.transcendental_residual = f(out.x_star);
    return out;
}

CqEnsemble holevo_optimal_ensemble() {
    HolevoClosedForm cf = holevo_one_sender_closed_form();
    OneSenderScenario sc{cf.x_star, std::asin(std::sqrt(cf.x_star)), M_PI};
    return sc.ensemble();
}

}  // namespace spmac
