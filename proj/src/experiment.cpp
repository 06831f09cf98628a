#include "pfd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace pfd {

void ExperimentConfig::validate() const {
    if (dA < 1 || dB < 1 || t < 1) throw validation_error("mc config: dims and t must be positive");
    if (n_samples < 1) throw validation_error("mc config: n_samples must be positive");
    if (n_runs < 1) throw validation_error("mc config: n_runs must be positive");
    if (p_list.empty()) throw validation_error("mc config: p_list must not be empty");
    long long bigdim = 1;
    for (int i = 0; i < t; ++i) {
        bigdim *= static_cast<long long>(dA) * dB;
        check_dense_dim(bigdim, "mc config");
    }
    if (!checkpoints.empty()) {
        for (size_t i = 0; i < checkpoints.size(); ++i) {
            if (checkpoints[i] < 1) throw validation_error("mc config: checkpoints must be positive");
            if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
                throw validation_error("mc config: checkpoints must be strictly increasing");
            }
        }
        if (checkpoints.back() > n_samples) {
            throw validation_error("mc config: last checkpoint exceeds n_samples");
        }
    }
    if (workers < 0) throw validation_error("mc config: workers must be nonnegative");
}

std::vector<int> default_checkpoints(int n_samples) {
    std::vector<int> cps;
    for (int k = 0;; ++k) {
        const int m = static_cast<int>(std::llround(std::pow(10.0, k / 20.0)));
        if (m > n_samples) break;
        if (cps.empty() || m > cps.back()) cps.push_back(m);
    }
    if (cps.empty() || cps.back() != n_samples) cps.push_back(n_samples);
    return cps;
}

double fit_loglog_slope(const std::vector<double>& log_x, const std::vector<double>& log_y) {
    if (log_x.size() != log_y.size() || log_x.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double n = static_cast<double>(log_x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < log_x.size(); ++i) {
        sx += log_x[i];
        sy += log_y[i];
        sxx += log_x[i] * log_x[i];
        sxy += log_x[i] * log_y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

int resolve_workers(const ExperimentConfig& cfg) {
    int w = cfg.workers;
    if (w == 0) {
        if (const char* env = std::getenv(kWorkersEnvVar)) {
            w = std::atoi(env);
        }
    }
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w <= 0) w = 1;
    return std::min(w, cfg.n_runs);
}

} // namespace

long ExperimentResult::total_violations() const {
    long n = 0;
    for (const auto& s : per_p) n += s.violations_obs1 + s.violations_thm4;
    return n;
}

ExperimentResult run_mc_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    ExperimentResult result;
    result.config = cfg;
    result.checkpoints = cfg.checkpoints.empty() ? default_checkpoints(cfg.n_samples)
                                                 : cfg.checkpoints;

    const int d = cfg.dA * cfg.dB;
    const MomentOperator source_ref = haar_projective_moment(d, cfg.t);
    const MomentOperator pushed_ref = haar_mixed_moment(cfg.dA, cfg.dB, cfg.t);
    const FactorShape full_shape = FactorShape::bipartite_copies(cfg.dA, cfg.dB, cfg.t);
    std::vector<int> traced;
    for (int i = 0; i < cfg.t; ++i) traced.push_back(2 * i + 1);

    const size_t np = cfg.p_list.size();
    std::vector<double> l_obs1(np), l_thm4(np);
    for (size_t i = 0; i < np; ++i) {
        l_obs1[i] = lipschitz_constant(LipschitzKind::ptrace_naive, cfg.dB, cfg.t, cfg.p_list[i]);
        l_thm4[i] = lipschitz_constant(LipschitzKind::ptrace_sym, cfg.dB, cfg.t, cfg.p_list[i]);
    }

    const size_t per_run = result.checkpoints.size() * np;
    result.records.resize(static_cast<size_t>(cfg.n_runs) * per_run);

    const long long bigdim = source_ref.matrix.rows();
    auto run_one = [&](int run_id) {
        RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(run_id));
        Matrix acc = Matrix::Zero(bigdim, bigdim);
        size_t ci = 0;
        size_t rec = static_cast<size_t>(run_id) * per_run;
        for (int m = 1; m <= cfg.n_samples && ci < result.checkpoints.size(); ++m) {
            const Vector psi = sample_haar_state(d, rng);
            const Matrix phi = kron_power(psi, cfg.t);
            acc.noalias() += phi * phi.adjoint();
            if (m != result.checkpoints[ci]) continue;
            ++ci;
            const Matrix avg = acc / static_cast<double>(m);
            const RealVector sv_src = singular_values(avg - source_ref.matrix);
            const RealVector sv_push =
                singular_values(partial_trace(avg, full_shape, traced) - pushed_ref.matrix);
            for (size_t ip = 0; ip < np; ++ip) {
                TrajectoryRecord& r = result.records[rec++];
                r.run_id = run_id;
                r.samples = m;
                r.p = cfg.p_list[ip];
                r.delta_source = schatten_norm(sv_src, cfg.p_list[ip]);
                r.delta_pushed = schatten_norm(sv_push, cfg.p_list[ip]);
                r.bound_obs1 = l_obs1[ip] * r.delta_source;
                r.bound_thm4 = l_thm4[ip] * r.delta_source;
            }
        }
    };

    const int workers = resolve_workers(cfg);
    if (workers <= 1) {
        for (int r = 0; r < cfg.n_runs; ++r) run_one(r);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= cfg.n_runs) return;
                    try {
                        run_one(r);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    // Per-p summaries, aggregated in run order.
    const size_t ncp = result.checkpoints.size();
    for (size_t ip = 0; ip < np; ++ip) {
        PerPSummary s;
        s.p = cfg.p_list[ip];
        std::vector<double> mean_src(ncp, 0.0);
        for (int run = 0; run < cfg.n_runs; ++run) {
            for (size_t c = 0; c < ncp; ++c) {
                const TrajectoryRecord& r =
                    result.records[static_cast<size_t>(run) * per_run + c * np + ip];
                if (r.delta_pushed > r.bound_obs1 + kBoundTol) ++s.violations_obs1;
                if (r.delta_pushed > r.bound_thm4 + kBoundTol) ++s.violations_thm4;
                mean_src[c] += r.delta_source / cfg.n_runs;
                if (c + 1 == ncp) {
                    s.mean_final_delta_source += r.delta_source / cfg.n_runs;
                    s.mean_final_delta_pushed += r.delta_pushed / cfg.n_runs;
                    if (r.bound_thm4 > 0.0) {
                        s.max_tightness_thm4 =
                            std::max(s.max_tightness_thm4, r.delta_pushed / r.bound_thm4);
                    }
                }
            }
        }
        std::vector<double> lx, ly;
        for (size_t c = 0; c < ncp; ++c) {
            if (result.checkpoints[c] >= 100 && mean_src[c] > 0.0) {
                lx.push_back(std::log10(static_cast<double>(result.checkpoints[c])));
                ly.push_back(std::log10(mean_src[c]));
            }
        }
        s.slope_source = fit_loglog_slope(lx, ly);
        result.per_p.push_back(s);
    }
    return result;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
    os << "run_id,M,p,delta_source,delta_pushed,bound_obs1,bound_thm4\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%s,%.17g,%.17g,%.17g,%.17g\n", r.run_id, r.samples,
                      r.p.str().c_str(), r.delta_source, r.delta_pushed, r.bound_obs1,
                      r.bound_thm4);
        os << buf;
    }
}

nlohmann::ordered_json experiment_summary_json(const ExperimentResult& result) {
    nlohmann::ordered_json p_list = nlohmann::ordered_json::array();
    for (const auto& p : result.config.p_list) p_list.push_back(p.str());

    nlohmann::ordered_json per_p = nlohmann::ordered_json::object();
    for (const auto& s : result.per_p) {
        per_p[s.p.str()] = {{"violations_obs1", s.violations_obs1},
                            {"violations_thm4", s.violations_thm4},
                            {"mean_final_delta_source", s.mean_final_delta_source},
                            {"mean_final_delta_pushed", s.mean_final_delta_pushed},
                            {"slope_source", s.slope_source},
                            {"max_tightness_thm4", s.max_tightness_thm4}};
    }
    return {{"generator_version", kGeneratorVersion},
            {"config",
             {{"dA", result.config.dA},
              {"dB", result.config.dB},
              {"t", result.config.t},
              {"n_samples", result.config.n_samples},
              {"n_runs", result.config.n_runs},
              {"p_list", std::move(p_list)},
              {"master_seed", result.config.master_seed},
              {"checkpoints", result.checkpoints}}},
            {"total_violations", result.total_violations()},
            {"per_p", std::move(per_p)}};
}

} // namespace pfd
