#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "pfd/errors.hpp"

namespace pfd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense-only policy: operators larger than this on a side are rejected.
inline constexpr long long kMaxDenseDim = 10'000;

/// Singular values below kRankTol * s_max count as zero for rank queries.
inline constexpr double kRankTol = 1e-12;

void check_dense_dim(long long dim, const char* where);

/// Schatten norm order p in [1, inf], with infinity as a distinguished value.
class SchattenIndex {
public:
    SchattenIndex(double p);
    static SchattenIndex infinity();

    bool is_infinity() const { return std::isinf(p_); }
    double value() const { return p_; }

    /// (p-1)/p: 0 at p=1, 1 at p=inf.
    double holder_exponent() const { return is_infinity() ? 1.0 : (p_ - 1.0) / p_; }
    /// 1/p: 0 at p=inf.
    double reciprocal() const { return is_infinity() ? 0.0 : 1.0 / p_; }

    /// "1", "2.5", "inf"; round-trips through parse().
    std::string str() const;
    static SchattenIndex parse(const std::string& s);

    friend bool operator==(const SchattenIndex& a, const SchattenIndex& b) {
        return (a.is_infinity() && b.is_infinity()) || a.p_ == b.p_;
    }

private:
    double p_;
};

/// Permutation of {0,...,n-1} stored as an image list: sigma(i) = image[i].
class Permutation {
public:
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    /// All n! permutations in lexicographic image order. Guard n <= 8.
    static std::vector<Permutation> all(int n);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }

    Permutation inverse() const;
    /// Group product: (a.after(b))(x) = a(b(x)).
    Permutation after(const Permutation& b) const;
    /// Number of disjoint cycles, fixed points included.
    int cycle_count() const;

    friend bool operator==(const Permutation& a, const Permutation& b) = default;

private:
    std::vector<int> image_;
};

/// Ordered local dimensions of tensor factors; the flattened dimension is
/// their product with row-major composite indexing (factor 0 most significant).
class FactorShape {
public:
    explicit FactorShape(std::vector<int> dims);
    /// t copies of a d-dimensional factor.
    static FactorShape copies(int d, int t);
    /// Interleaved bipartite copies (A1,B1,A2,B2,...,At,Bt).
    static FactorShape bipartite_copies(int dA, int dB, int t);

    int factor_count() const { return static_cast<int>(dims_.size()); }
    int dim(int i) const { return dims_[i]; }
    const std::vector<int>& dims() const { return dims_; }
    long long flat_dim() const;

    friend bool operator==(const FactorShape& a, const FactorShape& b) = default;

private:
    std::vector<int> dims_;
};

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

/// t-fold Kronecker power; t = 0 gives the 1x1 identity.
Matrix kron_power(const Matrix& a, int t);

/// Singular values, descending. Throws computation_error on SVD failure.
RealVector singular_values(const Matrix& a);

double schatten_norm(const RealVector& sv, const SchattenIndex& p);
double schatten_norm(const Matrix& a, const SchattenIndex& p);

/// Count of singular values above kRankTol * s_max.
int numerical_rank(const RealVector& sv);
int numerical_rank(const Matrix& a);

/// max_ij |A_ij - conj(A_ji)|.
double hermiticity_error(const Matrix& a);
/// hermiticity_error(a) <= 1e-12 * max|A|.
bool is_hermitian(const Matrix& a);

/// Trace out the given factor positions (0-based); kept factors retain their
/// original order. Trace is preserved: Tr(result) = Tr(a).
Matrix partial_trace(const Matrix& a, const FactorShape& shape,
                     const std::vector<int>& traced);

/// P_sigma on (C^d)^{(x)t} with P|i_1...i_t> = |i_{sigma^-1(1)}...i_{sigma^-1(t)}>;
/// satisfies P_sigma P_tau = P_{sigma tau} exactly.
Matrix permutation_operator(const Permutation& sigma, int d);

/// (1/t!) sum_sigma P_sigma: idempotent, Hermitian, trace binom(d+t-1, t).
Matrix symmetric_projector(int d, int t);

/// Reshuffle of a square operator on a bipartite space (d1, d2):
/// A_{(i,k),(j,l)} -> A^R_{(i,j),(k,l)}, first index of each pair on factor 1.
/// Output is d1^2 x d2^2; an involution together with the general overload.
Matrix reshuffle(const Matrix& a, const FactorShape& shape);

/// General reshuffle with row factors (r1, r2) and column factors (c1, c2);
/// output has row factors (r1, c1) and column factors (r2, c2).
Matrix reshuffle(const Matrix& a, int r1, int r2, int c1, int c2);

/// Per-copy reshuffle of an operator on ((C^d (x) C^d))^{(x)t}: in every copy
/// (i,k),(j,l) -> (i,j),(k,l). For t = 1 this is reshuffle with shape (d, d).
Matrix reshuffle_copies(const Matrix& a, int d, int t);

/// Measured norms and bounds for |AB|_p <= min(|A|_p |B|_inf, |B|_p |A|_inf)
/// and the ABA^dag corollary.
struct ProductNormWitness {
    double norm_ab = 0.0;
    double bound_ab = 0.0;
    bool ab_ok = false;
    double norm_aba = 0.0;
    double bound_aba = 0.0;
    bool aba_ok = false;
};

ProductNormWitness product_norm_bound_check(const Matrix& a, const Matrix& b,
                                            const SchattenIndex& p);

} // namespace pfd
