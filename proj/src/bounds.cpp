#include "pfd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pfd {

long long sym_dim(int d, int t) {
    if (d < 1 || t < 1) throw validation_error("sym_dim: d, t must be positive");
    // binom(d+t-1, t) by incremental exact division.
    long long r = 1;
    for (int i = 1; i <= t; ++i) {
        const long long num = d - 1 + i;
        if (r > std::numeric_limits<long long>::max() / num) {
            throw validation_error("sym_dim: binomial overflow");
        }
        r = r * num / i;
    }
    return r;
}

double lipschitz_constant(LipschitzKind kind, int dim, int t, const SchattenIndex& p) {
    if (dim < 1 || t < 1) throw validation_error("lipschitz_constant: dims must be positive");
    const double h = p.holder_exponent();
    switch (kind) {
        case LipschitzKind::simplex:
            return std::pow(static_cast<double>(dim), t * h);
        case LipschitzKind::ptrace_naive:
            return std::pow(static_cast<double>(dim), t * h);
        case LipschitzKind::ptrace_sym:
            return std::pow(static_cast<double>(sym_dim(dim, t)), h);
        case LipschitzKind::channel:
            return std::pow(static_cast<double>(sym_dim(dim * dim, t)), h);
    }
    throw validation_error("lipschitz_constant: unknown kind");
}

MixedStateBounds mixed_state_bound_report(double delta_p, double delta_inf, int dA, int dB,
                                          int t, const SchattenIndex& p) {
    if (delta_p < 0.0 || delta_inf < 0.0) {
        throw validation_error("mixed_state_bound_report: deltas must be nonnegative");
    }
    const double inv_p = p.reciprocal();
    const double dbt = std::pow(static_cast<double>(dB), t);
    const double da_tp = std::pow(static_cast<double>(dA), t * inv_p);
    const double DA = static_cast<double>(sym_dim(dA, t));
    const double DB = static_cast<double>(sym_dim(dB, t));
    const double db_half = std::pow(static_cast<double>(dB), 0.5 * t);

    MixedStateBounds out;
    out.asym_basic = std::min(delta_p * dbt, delta_inf * dbt * da_tp);
    out.asym_improved = std::min(delta_p * dbt, delta_inf * dbt * std::pow(DA, inv_p));
    out.thm5_final = std::min(delta_p * db_half * std::sqrt(DB),
                              delta_inf * std::pow(DA, inv_p) * db_half * std::sqrt(DB));
    return out;
}

BoundReport certify(const MomentOperator& t_mu, const MomentOperator& t_nu,
                    const PushforwardMap& map, const SchattenIndex& p) {
    BoundReport rep;
    rep.p = p;
    rep.delta_source_p = delta(t_mu, t_nu, p);
    // Asymmetric mixed-state bounds mix norms, so delta_inf is always measured.
    rep.delta_source_inf = p.is_infinity() ? rep.delta_source_p
                                           : delta(t_mu, t_nu, SchattenIndex::infinity());

    const MomentOperator pushed_mu = pushforward_moment(t_mu, map);
    const MomentOperator pushed_nu = pushforward_moment(t_nu, map);
    rep.delta_pushed = delta(pushed_mu, pushed_nu, p);

    switch (map.kind) {
        case MapKind::decohere: {
            rep.bounds["thm1_simplex"] =
                lipschitz_constant(LipschitzKind::simplex, map.dA, map.t, p) * rep.delta_source_p;
            break;
        }
        case MapKind::ptrace_B: {
            rep.bounds["obs1_naive"] =
                lipschitz_constant(LipschitzKind::ptrace_naive, map.dB, map.t, p) *
                rep.delta_source_p;
            rep.bounds["thm4_sym"] =
                lipschitz_constant(LipschitzKind::ptrace_sym, map.dB, map.t, p) *
                rep.delta_source_p;
            const MixedStateBounds mb = mixed_state_bound_report(
                rep.delta_source_p, rep.delta_source_inf, map.dA, map.dB, map.t, p);
            rep.bounds["asym_basic"] = mb.asym_basic;
            rep.bounds["asym_improved"] = mb.asym_improved;
            rep.bounds["thm5_final"] = mb.thm5_final;
            break;
        }
        case MapKind::channel_trace_B: {
            rep.bounds["chan_lip_1"] =
                lipschitz_constant(LipschitzKind::channel, map.dB, map.t, p) * rep.delta_source_p;
            break;
        }
    }
    for (const auto& [name, value] : rep.bounds) {
        rep.satisfied[name] = rep.delta_pushed <= value + kBoundTol;
    }
    return rep;
}

WelchDeltaRelation welch_delta_relation(const Ensemble& e, int t, int d) {
    e.validate();
    if (e.kind != EnsembleKind::pure_state) {
        throw validation_error("welch_delta_relation: ensemble must hold pure states");
    }
    if (e.dim() != d) throw validation_error("welch_delta_relation: dimension mismatch");

    const MomentOperator pushed = empirical_moment(decohere_ensemble(e), t);
    const MomentOperator flat = haar_simplex_moment(d, t);

    WelchDeltaRelation out;
    out.lhs = delta(flat, pushed, SchattenIndex::infinity());
    out.rhs = std::pow(static_cast<double>(d), t) * welch_gap(e, t);
    out.holds = out.lhs <= out.rhs + kBoundTol;
    return out;
}

} // namespace pfd
