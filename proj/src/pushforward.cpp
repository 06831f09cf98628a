#include "pfd/pushforward.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace pfd {

std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::decohere: return "decohere";
        case MapKind::ptrace_B: return "ptrace_B";
        case MapKind::channel_trace_B: return "channel_trace_B";
    }
    throw validation_error("unknown map kind");
}

PushforwardMap PushforwardMap::decohere(int d, int t) {
    if (d < 1 || t < 1) throw validation_error("decohere map: d, t must be positive");
    return PushforwardMap{MapKind::decohere, d, 1, t};
}

PushforwardMap PushforwardMap::ptrace(int dA, int dB, int t) {
    if (dA < 1 || dB < 1 || t < 1) throw validation_error("ptrace map: dims must be positive");
    return PushforwardMap{MapKind::ptrace_B, dA, dB, t};
}

PushforwardMap PushforwardMap::channel_trace(int dA, int dB, int t) {
    if (dA < 1 || dB < 1 || t < 1) {
        throw validation_error("channel_trace map: dims must be positive");
    }
    return PushforwardMap{MapKind::channel_trace_B, dA, dB, t};
}

// ---------------------------------------------------------------------------
// Ensemble-level pushforwards
// ---------------------------------------------------------------------------

Ensemble decohere_ensemble(const Ensemble& e) {
    e.validate();
    if (e.kind != EnsembleKind::pure_state) {
        throw validation_error("decohere_ensemble: ensemble must hold pure states");
    }
    Ensemble out;
    out.kind = EnsembleKind::probability_vector;
    out.weights = e.weights;
    out.points.reserve(e.points.size());
    for (const Matrix& psi : e.points) {
        Matrix p(psi.rows(), 1);
        for (Eigen::Index j = 0; j < psi.rows(); ++j) {
            p(j, 0) = Complex(std::norm(psi(j, 0)), 0.0);
        }
        out.points.push_back(std::move(p));
    }
    return out;
}

Ensemble ptrace_ensemble(const Ensemble& e, int dA, int dB) {
    e.validate();
    if (e.kind != EnsembleKind::pure_state) {
        throw validation_error("ptrace_ensemble: ensemble must hold pure states");
    }
    if (e.dim() != dA * dB) {
        throw validation_error("ptrace_ensemble: point dimension does not equal dA*dB");
    }
    const FactorShape shape(std::vector<int>{dA, dB});
    Ensemble out;
    out.kind = EnsembleKind::density_matrix;
    out.weights = e.weights;
    out.points.reserve(e.points.size());
    for (const Matrix& psi : e.points) {
        out.points.push_back(partial_trace(psi * psi.adjoint(), shape, {1}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Moment-level pushforward
// ---------------------------------------------------------------------------

MomentOperator pushforward_moment(const MomentOperator& T, const PushforwardMap& map) {
    if (T.t != map.t) throw validation_error("pushforward_moment: t mismatch");
    MomentOperator out;
    out.t = T.t;
    switch (map.kind) {
        case MapKind::decohere: {
            if (T.space != SpaceKind::projective && T.space != SpaceKind::simplex) {
                throw validation_error("pushforward_moment: decohere expects a projective or simplex moment");
            }
            if (T.local_dims.flat_dim() != map.dA) {
                throw validation_error("pushforward_moment: dimension mismatch");
            }
            out.space = SpaceKind::simplex;
            out.local_dims = FactorShape(std::vector<int>{map.dA});
            out.matrix = Vector(T.matrix.diagonal()).asDiagonal();
            break;
        }
        case MapKind::ptrace_B: {
            if (T.space != SpaceKind::projective) {
                throw validation_error("pushforward_moment: ptrace_B expects a projective moment");
            }
            if (T.local_dims.flat_dim() != static_cast<long long>(map.dA) * map.dB) {
                throw validation_error("pushforward_moment: dimension mismatch");
            }
            const FactorShape shape = FactorShape::bipartite_copies(map.dA, map.dB, map.t);
            std::vector<int> traced;
            for (int i = 0; i < map.t; ++i) traced.push_back(2 * i + 1);
            out.space = SpaceKind::mixed;
            out.local_dims = FactorShape(std::vector<int>{map.dA});
            out.matrix = partial_trace(T.matrix, shape, traced);
            break;
        }
        case MapKind::channel_trace_B: {
            if (T.space != SpaceKind::channel) {
                throw validation_error("pushforward_moment: channel_trace_B expects a channel moment");
            }
            const long long d = static_cast<long long>(map.dA) * map.dB;
            if (T.local_dims.flat_dim() != d * d) {
                throw validation_error("pushforward_moment: dimension mismatch");
            }
            // 2t copies of H_A ⊗ H_B; trace every B factor.
            const FactorShape shape = FactorShape::bipartite_copies(map.dA, map.dB, 2 * map.t);
            std::vector<int> traced;
            for (int i = 0; i < 2 * map.t; ++i) traced.push_back(2 * i + 1);
            out.space = SpaceKind::channel;
            out.local_dims = FactorShape(std::vector<int>{map.dA, map.dA});
            out.matrix = partial_trace(T.matrix, shape, traced);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kraus machinery
// ---------------------------------------------------------------------------

std::vector<Matrix> kraus_operators(const PushforwardMap& map) {
    std::vector<Matrix> ops;
    switch (map.kind) {
        case MapKind::decohere: {
            for (int j = 0; j < map.dA; ++j) {
                Matrix k = Matrix::Zero(map.dA, map.dA);
                k(j, j) = Complex(1.0, 0.0);
                ops.push_back(std::move(k));
            }
            break;
        }
        case MapKind::ptrace_B: {
            for (int j = 0; j < map.dB; ++j) {
                Matrix k = Matrix::Zero(map.dA, static_cast<long long>(map.dA) * map.dB);
                for (int i = 0; i < map.dA; ++i) {
                    k(i, static_cast<long long>(i) * map.dB + j) = Complex(1.0, 0.0);
                }
                ops.push_back(std::move(k));
            }
            break;
        }
        case MapKind::channel_trace_B:
            throw validation_error("kraus_operators: unsupported map kind channel_trace_B");
    }
    return ops;
}

KrausProjectorSpectrum kraus_projector_spectrum(const std::vector<int>& a, int dA, int dB) {
    const int t = static_cast<int>(a.size());
    if (t < 1) throw validation_error("kraus_projector_spectrum: empty multi-index");
    for (int v : a) {
        if (v < 0 || v >= dB) {
            throw validation_error("kraus_projector_spectrum: multi-index entry out of range");
        }
    }
    double db_pow = std::pow(static_cast<double>(dB), t);
    if (db_pow > 729.0) {
        throw validation_error("kraus_projector_spectrum: dB^t exceeds guard 729");
    }
    long long bigdim = 1;
    for (int i = 0; i < t; ++i) {
        bigdim *= static_cast<long long>(dA) * dB;
        check_dense_dim(bigdim, "kraus_projector_spectrum");
    }

    // Cycle-sum trace over the stabilizer of a.
    const auto perms = Permutation::all(t);
    double cycle_sum = 0.0;
    for (const auto& sigma : perms) {
        bool fixes = true;
        for (int k = 0; k < t && fixes; ++k) fixes = a[sigma(k)] == a[k];
        if (fixes) cycle_sum += std::pow(static_cast<double>(dA), sigma.cycle_count());
    }
    cycle_sum /= static_cast<double>(perms.size());

    // Explicit P = K_a Pi K_a^dag on dA^t.
    const PushforwardMap map = PushforwardMap::ptrace(dA, dB, t);
    const auto kraus = kraus_operators(map);
    Matrix ka = Matrix::Identity(1, 1);
    for (int m = 0; m < t; ++m) ka = kron(ka, kraus[static_cast<size_t>(a[m])]);
    const Matrix pi = symmetric_projector(dA * dB, t);
    const Matrix p = ka * pi * ka.adjoint();

    Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw computation_error("kraus_projector_spectrum: eigensolver failed");
    }

    KrausProjectorSpectrum out;
    out.trace_formula = cycle_sum;
    out.matrix_trace = p.trace().real();
    out.eigenvalues = es.eigenvalues().reverse();
    out.trace_matches = std::abs(out.trace_formula - out.eigenvalues.sum()) <= 1e-10;
    out.idempotent = true;
    for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
        const double lam = out.eigenvalues(i);
        if (std::abs(lam) > 1e-8 && std::abs(lam - 1.0) > 1e-8) {
            out.idempotent = false;
            break;
        }
    }
    return out;
}

} // namespace pfd
