#include "spmac/capacity.hpp"

#include <nlohmann/json.hpp>
#include <random>

#include "spmac/parallel.hpp"

namespace spmac {

namespace {

RealVec joint_product_prior(const std::vector<int>& sizes, const std::vector<RealVec>& priors) {
    long total = 1;
    for (int m : sizes) total *= m;
    RealVec jp(total);
    for (long flat = 0; flat < total; ++flat) {
        long rest = flat;
        double p = 1.0;
        for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
            p *= priors[i](rest % sizes[i]);
            rest /= sizes[i];
        }
        jp(flat) = p;
    }
    return jp;
}

double product_rate_sum(const TransitionMatrix& tm, const std::vector<RealVec>& priors) {
    return channel_mutual_information(tm, joint_product_prior(tm.input_sizes(), priors));
}

// One multiplicative update of the prior r for a channel pf(y|x) with a
// linear per-letter cost: maximizes H(q_r) - sum_x r(x) c(x). The standard
// capacity iteration is the special case c(x) = H(pf(.|x)).
void ba_cost_update(const RealMat& pf, const RealVec& cost, RealVec& r) {
    RealVec q = pf * r;
    RealVec g(r.size());
    for (int x = 0; x < r.size(); ++x) {
        double s = 0.0;
        for (int y = 0; y < pf.rows(); ++y)
            if (pf(y, x) > 0.0 && q(y) > 0.0) s -= pf(y, x) * std::log2(q(y));
        g(x) = s - cost(x);
    }
    double gmax = g.maxCoeff();
    double norm = 0.0;
    for (int x = 0; x < r.size(); ++x) {
        r(x) *= std::exp2(g(x) - gmax);
        norm += r(x);
    }
    r /= norm;
}

bool lex_less(const std::vector<RealVec>& a, const std::vector<RealVec>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < a[i].size(); ++j) {
            if (a[i](j) < b[i](j) - 1e-15) return true;
            if (a[i](j) > b[i](j) + 1e-15) return false;
        }
    return false;
}

}  // namespace

std::string CapacityResult::to_json() const {
    nlohmann::json j;
    j["schema"] = "spmac/1";
    j["value_bits"] = value_bits;
    nlohmann::json pr = nlohmann::json::array();
    for (const auto& p : priors) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < p.size(); ++i) row.push_back(p(i));
        pr.push_back(row);
    }
    j["prior"] = pr;
    j["iterations"] = iterations;
    j["converged"] = converged;
    j["residual"] = residual;
    if (upper_bound_bits) j["upper_bound_bits"] = *upper_bound_bits;
    return j.dump();
}

CapacityResult ba_point_to_point(const TransitionMatrix& tm_in, const BaOptions& opts) {
    TransitionMatrix tm = tm_in.num_senders() == 1 ? tm_in : tm_in.flattened();
    const RealMat& p = tm.probabilities();
    const int nx = tm.num_inputs();
    RealVec r = RealVec::Constant(nx, 1.0 / nx);
    RealVec colH(nx);
    for (int x = 0; x < nx; ++x) {
        double h = 0.0;
        for (int y = 0; y < p.rows(); ++y) h -= xlog2x(p(y, x));
        colH(x) = h;
    }
    CapacityResult res;
    for (long it = 1; it <= opts.max_iterations; ++it) {
        RealVec q = p * r;
        RealVec d(nx);
        for (int x = 0; x < nx; ++x) {
            double s = 0.0;
            for (int y = 0; y < p.rows(); ++y)
                if (p(y, x) > 0.0 && q(y) > 0.0) s += p(y, x) * (std::log2(p(y, x)) - std::log2(q(y)));
            d(x) = s;
        }
        double lower = r.dot(d);   // current mutual information
        double upper = d.maxCoeff();
        res.iterations = it;
        res.value_bits = lower;
        res.residual = upper - lower;
        if (res.residual <= opts.tolerance) {
            res.converged = true;
            break;
        }
        double dmax = d.maxCoeff();
        double norm = 0.0;
        for (int x = 0; x < nx; ++x) {
            r(x) *= std::exp2(d(x) - dmax);
            norm += r(x);
        }
        r /= norm;
    }
    res.priors = {r};
    return res;
}

CapacityResult ba_mac_rate_sum(const TransitionMatrix& tm, const BaOptions& opts) {
    require(tm.num_senders() >= 2, "ba_mac_rate_sum: need at least two senders");
    const auto sizes = tm.input_sizes();
    const int nsenders = tm.num_senders();
    const RealMat& p = tm.probabilities();
    RealVec colH(tm.num_inputs());
    for (int x = 0; x < tm.num_inputs(); ++x) {
        double h = 0.0;
        for (int y = 0; y < p.rows(); ++y) h -= xlog2x(p(y, x));
        colH(x) = h;
    }

    auto solve_from = [&](std::vector<RealVec> priors) {
        double val = product_rate_sum(tm, priors);
        long sweeps = 0;
        bool converged = false;
        double improvement = 0.0;
        for (long it = 1; it <= opts.max_iterations; ++it) {
            double prior_move = 0.0;
            for (int i = 0; i < nsenders; ++i) {
                // Fold the other senders' priors into an effective channel and
                // an average-conditional-entropy cost for sender i.
                RealMat pf = RealMat::Zero(p.rows(), sizes[i]);
                RealVec cost = RealVec::Zero(sizes[i]);
                for (int flat = 0; flat < tm.num_inputs(); ++flat) {
                    long rest = flat;
                    int xi = 0;
                    double w = 1.0;
                    for (int k = nsenders - 1; k >= 0; --k) {
                        int digit = static_cast<int>(rest % sizes[k]);
                        rest /= sizes[k];
                        if (k == i)
                            xi = digit;
                        else
                            w *= priors[k](digit);
                    }
                    pf.col(xi) += w * p.col(flat);
                    cost(xi) += w * colH(flat);
                }
                RealVec before = priors[i];
                for (int inner = 0; inner < 64; ++inner) {
                    RealVec prev = priors[i];
                    ba_cost_update(pf, cost, priors[i]);
                    if ((priors[i] - prev).cwiseAbs().maxCoeff() < 1e-15) break;
                }
                prior_move = std::max(prior_move, (priors[i] - before).cwiseAbs().maxCoeff());
            }
            double next = product_rate_sum(tm, priors);
            improvement = next - val;
            val = next;
            sweeps = it;
            if (improvement < opts.mac_tolerance && it > 1 &&
                (opts.prior_tolerance <= 0.0 || prior_move < opts.prior_tolerance)) {
                converged = true;
                break;
            }
        }
        CapacityResult r;
        r.value_bits = val;
        r.priors = std::move(priors);
        r.iterations = sweeps;
        r.converged = converged;
        r.residual = improvement;
        return r;
    };

    // Multi-start: a uniform start plus seeded random restarts; the
    // product-prior problem is nonconvex.
    std::vector<std::vector<RealVec>> starts;
    {
        std::vector<RealVec> uniform;
        for (int m : sizes) uniform.push_back(RealVec::Constant(m, 1.0 / m));
        starts.push_back(std::move(uniform));
    }
    for (int rsi = 0; rsi < opts.restarts; ++rsi) {
        std::mt19937_64 gen(derive_seed(opts.seed, static_cast<std::uint64_t>(rsi)));
        std::uniform_real_distribution<double> u(0.02, 1.0);
        std::vector<RealVec> pr;
        for (int m : sizes) {
            RealVec v(m);
            for (int k = 0; k < m; ++k) v(k) = u(gen);
            v /= v.sum();
            pr.push_back(std::move(v));
        }
        starts.push_back(std::move(pr));
    }

    std::vector<CapacityResult> results(starts.size());
    parallel_for(static_cast<long>(starts.size()),
                 [&](long i) { results[i] = solve_from(starts[i]); });

    // Deterministic reduction: max value, lexicographic tie-break on priors.
    size_t best = 0;
    for (size_t i = 1; i < results.size(); ++i) {
        if (results[i].value_bits > results[best].value_bits + 1e-12 ||
            (std::abs(results[i].value_bits - results[best].value_bits) <= 1e-12 &&
             lex_less(results[i].priors, results[best].priors)))
            best = i;
    }
    CapacityResult out = results[best];
    out.upper_bound_bits = ba_point_to_point(tm, opts).value_bits;
    return out;
}

double grid_oracle_rate_sum(const TransitionMatrix& tm, int resolution) {
    require(tm.num_senders() <= 2, "grid_oracle_rate_sum: too many senders");
    for (int m : tm.input_sizes())
        require(m <= 3, "grid_oracle_rate_sum: alphabet too large");
    require(resolution >= 2, "grid_oracle_rate_sum: resolution too small");

    const auto sizes = tm.input_sizes();
    // Enumerate each sender's prior over a simplex grid.
    auto simplex_points = [&](int m) {
        std::vector<RealVec> pts;
        if (m == 1) {
            pts.push_back(RealVec::Constant(1, 1.0));
        } else if (m == 2) {
            for (int i = 0; i < resolution; ++i) {
                double a = static_cast<double>(i) / (resolution - 1);
                RealVec v(2);
                v << a, 1.0 - a;
                pts.push_back(v);
            }
        } else {
            for (int i = 0; i < resolution; ++i)
                for (int j = 0; i + j < resolution; ++j) {
                    double a = static_cast<double>(i) / (resolution - 1);
                    double b = static_cast<double>(j) / (resolution - 1);
                    RealVec v(3);
                    v << a, b, 1.0 - a - b;
                    pts.push_back(v);
                }
        }
        return pts;
    };

    std::vector<std::vector<RealVec>> grids;
    for (int m : sizes) grids.push_back(simplex_points(m));

    if (sizes.size() == 1) {
        double best = 0.0;
        for (const auto& v : grids[0]) best = std::max(best, product_rate_sum(tm, {v}));
        return best;
    }

    std::vector<double> best_per_row(grids[0].size(), 0.0);
    parallel_for(static_cast<long>(grids[0].size()), [&](long i) {
        double best = 0.0;
        for (const auto& w : grids[1]) best = std::max(best, product_rate_sum(tm, {grids[0][i], w}));
        best_per_row[i] = best;
    });
    double best = 0.0;
    for (double v : best_per_row) best = std::max(best, v);
    return best;
}

}  // namespace spmac
