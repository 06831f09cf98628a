#pragma once

#include <vector>

#include "pfd/moments.hpp"

namespace pfd {

enum class MapKind { decohere, ptrace_B, channel_trace_B };

std::string to_string(MapKind k);

/// A measurable map F together with the data needed to push moment
/// operators through it.
struct PushforwardMap {
    MapKind kind = MapKind::decohere;
    int dA = 1; // decohere: the full dimension d
    int dB = 1;
    int t = 1;

    static PushforwardMap decohere(int d, int t);
    static PushforwardMap ptrace(int dA, int dB, int t);
    static PushforwardMap channel_trace(int dA, int dB, int t);
};

/// Measurement-statistics pushforward: (p_i)_j = |<j|psi_i>|^2, same weights.
Ensemble decohere_ensemble(const Ensemble& e);

/// Reduced-state pushforward: Tr_B |psi_i><psi_i| on dimension dA, same weights.
Ensemble ptrace_ensemble(const Ensemble& e, int dA, int dB);

/// Image moment operator. ptrace_B traces all B factors (interleaved
/// convention), decohere zeroes every off-diagonal entry (t-fold dephasing),
/// channel_trace_B traces all 2t B factors of a channel-space moment.
MomentOperator pushforward_moment(const MomentOperator& T, const PushforwardMap& map);

/// Per-copy Kraus operators of the map: d projectors |j><j| for decohere,
/// dB operators K_j = sum_i |i><i,j| for ptrace_B. Satisfy sum K^dag K = I.
std::vector<Matrix> kraus_operators(const PushforwardMap& map);

/// Spectrum audit of P = K_a Pi_{AB,t} K_a^dag for a multi-index a in
/// {0..dB-1}^t, against the cycle-sum trace formula
/// Tr(P) = (1/t!) sum_{sigma(a)=a} dA^cycl(sigma).
struct KrausProjectorSpectrum {
    double trace_formula = 0.0;
    double matrix_trace = 0.0;
    RealVector eigenvalues; // descending
    bool trace_matches = false; // |trace_formula - sum eigenvalues| <= 1e-10
    bool idempotent = false;    // every eigenvalue within 1e-8 of {0, 1}
};

KrausProjectorSpectrum kraus_projector_spectrum(const std::vector<int>& a, int dA, int dB);

} // namespace pfd
