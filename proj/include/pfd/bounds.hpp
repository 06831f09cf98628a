#pragma once

#include <map>
#include <string>

#include "pfd/pushforward.hpp"

namespace pfd {

/// Additive tolerance for bound-satisfaction checks.
inline constexpr double kBoundTol = 1e-10;

/// dim Sym_t(C^d) = binom(d+t-1, t), exact integer arithmetic.
long long sym_dim(int d, int t);

enum class LipschitzKind { simplex, ptrace_naive, ptrace_sym, channel };

/// Norm-inflation constant of the pushforward map:
///   simplex       d^{t(p-1)/p}
///   ptrace_naive  dB^{t(p-1)/p}
///   ptrace_sym    binom(dB+t-1,t)^{(p-1)/p}
///   channel       binom(dB^2+t-1,t)^{(p-1)/p}
/// `dim` is d for simplex and dB otherwise.
double lipschitz_constant(LipschitzKind kind, int dim, int t, const SchattenIndex& p);

/// The three min-form mixed-state bounds in terms of source deltas.
struct MixedStateBounds {
    double asym_basic = 0.0;    // min(dp dB^t, dinf dB^t dA^{t/p})
    double asym_improved = 0.0; // min(dp dB^t, dinf dB^t D_{A,t}^{1/p})
    double thm5_final = 0.0;    // min(dp dB^{t/2} D_{B,t}^{1/2}, dinf D_{A,t}^{1/p} dB^{t/2} D_{B,t}^{1/2})
};

MixedStateBounds mixed_state_bound_report(double delta_p, double delta_inf, int dA, int dB,
                                          int t, const SchattenIndex& p);

/// Measured deltas of a pushforward pair plus every applicable bound.
struct BoundReport {
    SchattenIndex p = SchattenIndex(1);
    double delta_source_p = 0.0;
    double delta_source_inf = 0.0;
    double delta_pushed = 0.0;
    std::map<std::string, double> bounds;
    std::map<std::string, bool> satisfied;
};

/// Pushes both moment operators through the map, measures delta', and checks
/// it against every bound that applies to the map kind.
BoundReport certify(const MomentOperator& t_mu, const MomentOperator& t_nu,
                    const PushforwardMap& map, const SchattenIndex& p);

/// Both sides of the simplex relation delta'_inf <= d^t W(S).
struct WelchDeltaRelation {
    double lhs = 0.0; // delta_inf of the decohered design
    double rhs = 0.0; // d^t * welch_gap
    bool holds = false;
};

WelchDeltaRelation welch_delta_relation(const Ensemble& e, int t, int d);

} // namespace pfd
