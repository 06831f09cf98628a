#pragma once

#include <string>
#include <vector>

#include "pfd/linalg.hpp"

namespace pfd {

enum class SpaceKind { projective, simplex, mixed, channel };
enum class EnsembleKind { pure_state, density_matrix, probability_vector, unitary };

std::string to_string(SpaceKind s);
std::string to_string(EnsembleKind k);
SpaceKind space_from_string(const std::string& s);
EnsembleKind ensemble_kind_from_string(const std::string& s);

/// A discrete normalized measure: weighted points of one kind.
/// Pure states and probability vectors are stored as column vectors.
struct Ensemble {
    EnsembleKind kind = EnsembleKind::pure_state;
    std::vector<Matrix> points;
    std::vector<double> weights;

    int dim() const;
    /// Checks weights (nonnegative, sum 1 within 1e-12) and the per-kind point
    /// invariants; throws validation_error naming the failing point.
    void validate() const;

    static Ensemble uniform(EnsembleKind kind, std::vector<Matrix> points);
};

/// T_{mu,t} on the t-fold tensor space. local_dims lists the per-copy factor
/// dimensions, so matrix dimension = (prod local_dims)^t.
struct MomentOperator {
    SpaceKind space = SpaceKind::projective;
    FactorShape local_dims = FactorShape(std::vector<int>{1});
    int t = 1;
    Matrix matrix;
};

/// Checks Hermiticity; for state spaces PSD and unit trace; for projective
/// moments support on the symmetric subspace. Used on untrusted input.
void validate_moment_operator(const MomentOperator& m);

/// Hermitian coefficient matrix of a balanced order-t polynomial.
struct PolynomialCoefficients {
    PolynomialCoefficients(int t, Matrix g);
    int t;
    Matrix matrix;
};

// ---------------------------------------------------------------------------
// Moment constructions
// ---------------------------------------------------------------------------

/// Empirical moment operator of a state-like ensemble. Pure states give a
/// projective moment supported on Sym_t, density matrices a mixed moment,
/// probability vectors a diagonal simplex moment.
MomentOperator empirical_moment(const Ensemble& e, int t);

/// Empirical channel moment of a unitary ensemble: the weighted average of
/// t-fold tensor powers of the per-unitary Choi-style reshuffled operator.
MomentOperator empirical_channel_moment(const Ensemble& e, int t);

/// Exact Haar reference on projective space: Pi_{d,t} / binom(d+t-1, t).
MomentOperator haar_projective_moment(int d, int t);

/// Exact flat-simplex reference: diagonal with Dirichlet(1,...,1) moments
/// E[p_{i1}...p_{it}] = (prod_k a_k!) (d-1)!/(d+t-1)!, a_k the multiplicities.
MomentOperator haar_simplex_moment(int d, int t);

/// Induced-measure reference: partial trace over all B factors of the
/// projective Haar moment on dimension dA*dB.
MomentOperator haar_mixed_moment(int dA, int dB, int t);

/// Pseudo-inverse of the S_t Gram matrix G_{sigma,tau} = d^cycl(sigma^-1 tau),
/// indexed by Permutation::all(t) order. Guard t <= 4.
RealMatrix weingarten_matrix(int d, int t);

/// Pre-reshuffle unitary moment: entries of int (U (x) U*)^{(x)t} dU by
/// Weingarten sums over permutation pairs. Guard t <= 3.
Matrix haar_channel_moment_raw(int d, int t);

/// Exact channel-space reference: haar_channel_moment_raw reshuffled per copy.
MomentOperator haar_unitary_channel_moment(int d, int t);

/// Schatten-p distance of two moment operators with identical metadata.
double delta(const MomentOperator& t1, const MomentOperator& t2, const SchattenIndex& p);

/// <g_t>_mu = Tr(G T); checked real within 1e-10.
double average_polynomial(const PolynomialCoefficients& g, const MomentOperator& T);

/// F_t = sum_ij w_i w_j |<psi_i|psi_j>|^{2t}; at least 1/binom(d+t-1,t).
double frame_potential(const Ensemble& e, int t);

/// W = sqrt((D-1)/D (F_t - 1/D)); zero iff the ensemble is an exact t-design.
double welch_gap(const Ensemble& e, int t);

} // namespace pfd
