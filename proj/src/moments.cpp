#include "pfd/moments.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "pfd/bounds.hpp"

namespace pfd {

std::string to_string(SpaceKind s) {
    switch (s) {
        case SpaceKind::projective: return "projective";
        case SpaceKind::simplex: return "simplex";
        case SpaceKind::mixed: return "mixed";
        case SpaceKind::channel: return "channel";
    }
    throw validation_error("unknown space kind");
}

std::string to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::pure_state: return "pure_state";
        case EnsembleKind::density_matrix: return "density_matrix";
        case EnsembleKind::probability_vector: return "probability_vector";
        case EnsembleKind::unitary: return "unitary";
    }
    throw validation_error("unknown ensemble kind");
}

SpaceKind space_from_string(const std::string& s) {
    if (s == "projective") return SpaceKind::projective;
    if (s == "simplex") return SpaceKind::simplex;
    if (s == "mixed") return SpaceKind::mixed;
    if (s == "channel") return SpaceKind::channel;
    throw validation_error("unknown space kind '" + s + "'");
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
    if (s == "pure_state") return EnsembleKind::pure_state;
    if (s == "density_matrix") return EnsembleKind::density_matrix;
    if (s == "probability_vector") return EnsembleKind::probability_vector;
    if (s == "unitary") return EnsembleKind::unitary;
    throw validation_error("unknown ensemble kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// Ensemble
// ---------------------------------------------------------------------------

int Ensemble::dim() const {
    if (points.empty()) throw validation_error("ensemble is empty");
    return static_cast<int>(points.front().rows());
}

Ensemble Ensemble::uniform(EnsembleKind kind, std::vector<Matrix> points) {
    Ensemble e;
    e.kind = kind;
    e.weights.assign(points.size(), points.empty() ? 0.0 : 1.0 / points.size());
    e.points = std::move(points);
    e.validate();
    return e;
}

namespace {

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw computation_error("eigenvalue computation failed");
    }
    return es.eigenvalues().minCoeff();
}

} // namespace

void Ensemble::validate() const {
    if (points.empty()) throw validation_error("ensemble is empty");
    if (points.size() != weights.size()) {
        throw validation_error("ensemble has " + std::to_string(points.size()) + " points but " +
                               std::to_string(weights.size()) + " weights");
    }
    double wsum = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) {
            throw validation_error("weight " + std::to_string(i) + " is negative");
        }
        wsum += weights[i];
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw validation_error("weights sum " + std::to_string(wsum));
    }

    const auto rows = points.front().rows();
    for (size_t i = 0; i < points.size(); ++i) {
        const Matrix& x = points[i];
        const std::string tag = "point " + std::to_string(i);
        if (x.rows() != rows) throw validation_error(tag + ": inconsistent dimension");
        switch (kind) {
            case EnsembleKind::pure_state: {
                if (x.cols() != 1) throw validation_error(tag + ": pure state must be a column vector");
                if (std::abs(x.norm() - 1.0) > 1e-12) {
                    throw validation_error(tag + ": pure state is not unit norm");
                }
                break;
            }
            case EnsembleKind::density_matrix: {
                if (x.cols() != x.rows()) throw validation_error(tag + ": density matrix not square");
                if (!is_hermitian(x)) throw validation_error(tag + ": density matrix not Hermitian");
                if (std::abs(x.trace().real() - 1.0) > 1e-10) {
                    throw validation_error(tag + ": density matrix trace != 1");
                }
                if (min_eigenvalue(x) < -1e-10) {
                    throw validation_error(tag + ": density matrix not positive semidefinite");
                }
                break;
            }
            case EnsembleKind::probability_vector: {
                if (x.cols() != 1) throw validation_error(tag + ": probability vector must be a column");
                double sum = 0.0;
                for (Eigen::Index j = 0; j < x.rows(); ++j) {
                    if (std::abs(x(j, 0).imag()) > 1e-12) {
                        throw validation_error(tag + ": probability vector has imaginary entries");
                    }
                    if (x(j, 0).real() < -1e-12) {
                        throw validation_error(tag + ": probability vector has negative entries");
                    }
                    sum += x(j, 0).real();
                }
                if (std::abs(sum - 1.0) > 1e-12) {
                    throw validation_error(tag + ": probabilities sum " + std::to_string(sum));
                }
                break;
            }
            case EnsembleKind::unitary: {
                if (x.cols() != x.rows()) throw validation_error(tag + ": unitary not square");
                const Matrix res = x.adjoint() * x - Matrix::Identity(x.rows(), x.rows());
                if (res.norm() > 1e-10) {
                    throw validation_error(tag + ": not unitary");
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// MomentOperator validation
// ---------------------------------------------------------------------------

void validate_moment_operator(const MomentOperator& m) {
    if (m.t < 1) throw validation_error("moment operator: t must be positive");
    long long dim = 1;
    for (int i = 0; i < m.t; ++i) dim *= m.local_dims.flat_dim();
    if (m.matrix.rows() != dim || m.matrix.cols() != dim) {
        throw validation_error("moment operator: matrix does not match (prod dims)^t");
    }
    if (!is_hermitian(m.matrix)) {
        throw validation_error("moment operator: matrix not Hermitian");
    }
    if (m.space == SpaceKind::projective || m.space == SpaceKind::simplex ||
        m.space == SpaceKind::mixed) {
        if (std::abs(m.matrix.trace().real() - 1.0) > 1e-10) {
            throw validation_error("moment operator: trace != 1");
        }
        if (min_eigenvalue(m.matrix) < -1e-10) {
            throw validation_error("moment operator: not positive semidefinite");
        }
    }
    if (m.space == SpaceKind::projective) {
        if (m.local_dims.factor_count() != 1) {
            throw validation_error("projective moment: expected a single local dimension");
        }
        const Matrix proj = symmetric_projector(m.local_dims.dim(0), m.t);
        if ((proj * m.matrix * proj - m.matrix).norm() > 1e-10) {
            throw validation_error("projective moment: not supported on the symmetric subspace");
        }
    }
}

PolynomialCoefficients::PolynomialCoefficients(int order, Matrix g)
    : t(order), matrix(std::move(g)) {
    if (t < 1) throw validation_error("polynomial coefficients: t must be positive");
    if (!is_hermitian(matrix)) {
        throw validation_error("polynomial coefficients: matrix not Hermitian");
    }
}

// ---------------------------------------------------------------------------
// Empirical moments
// ---------------------------------------------------------------------------

MomentOperator empirical_moment(const Ensemble& e, int t) {
    e.validate();
    if (t < 1) throw validation_error("empirical_moment: t must be positive");
    const int d = e.dim();
    long long bigdim = 1;
    for (int i = 0; i < t; ++i) {
        bigdim *= d;
        check_dense_dim(bigdim, "empirical_moment");
    }

    MomentOperator out;
    out.local_dims = FactorShape(std::vector<int>{d});
    out.t = t;

    switch (e.kind) {
        case EnsembleKind::pure_state: {
            out.space = SpaceKind::projective;
            Matrix acc = Matrix::Zero(bigdim, bigdim);
            for (size_t i = 0; i < e.points.size(); ++i) {
                const Matrix phi = kron_power(e.points[i], t);
                acc.noalias() += e.weights[i] * (phi * phi.adjoint());
            }
            out.matrix = std::move(acc);
            break;
        }
        case EnsembleKind::density_matrix: {
            out.space = SpaceKind::mixed;
            Matrix acc = Matrix::Zero(bigdim, bigdim);
            for (size_t i = 0; i < e.points.size(); ++i) {
                acc += e.weights[i] * kron_power(e.points[i], t);
            }
            out.matrix = std::move(acc);
            break;
        }
        case EnsembleKind::probability_vector: {
            out.space = SpaceKind::simplex;
            Vector diag = Vector::Zero(bigdim);
            for (size_t i = 0; i < e.points.size(); ++i) {
                diag += e.weights[i] * kron_power(e.points[i], t).col(0);
            }
            out.matrix = diag.asDiagonal();
            break;
        }
        case EnsembleKind::unitary:
            throw validation_error("empirical_moment: use empirical_channel_moment for unitaries");
    }
    return out;
}

MomentOperator empirical_channel_moment(const Ensemble& e, int t) {
    e.validate();
    if (e.kind != EnsembleKind::unitary) {
        throw validation_error("empirical_channel_moment: ensemble must hold unitaries");
    }
    if (t < 1) throw validation_error("empirical_channel_moment: t must be positive");
    const int d = e.dim();
    long long bigdim = 1;
    for (int i = 0; i < 2 * t; ++i) {
        bigdim *= d;
        check_dense_dim(bigdim, "empirical_channel_moment");
    }

    Matrix acc = Matrix::Zero(bigdim, bigdim);
    for (size_t i = 0; i < e.points.size(); ++i) {
        // Row-major vectorization: choi = vec(U) vec(U)^dag, trace d.
        const Matrix& u = e.points[i];
        Vector v(static_cast<long long>(d) * d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) v(static_cast<long long>(r) * d + c) = u(r, c);
        const Matrix choi = v * v.adjoint();
        acc += e.weights[i] * kron_power(choi, t);
    }

    MomentOperator out;
    out.space = SpaceKind::channel;
    out.local_dims = FactorShape(std::vector<int>{d, d});
    out.t = t;
    out.matrix = std::move(acc);
    return out;
}

// ---------------------------------------------------------------------------
// Haar references
// ---------------------------------------------------------------------------

MomentOperator haar_projective_moment(int d, int t) {
    MomentOperator out;
    out.space = SpaceKind::projective;
    out.local_dims = FactorShape(std::vector<int>{d});
    out.t = t;
    out.matrix = symmetric_projector(d, t) / static_cast<double>(sym_dim(d, t));
    return out;
}

MomentOperator haar_simplex_moment(int d, int t) {
    if (d < 1 || t < 1) throw validation_error("haar_simplex_moment: d, t must be positive");
    long long bigdim = 1;
    for (int i = 0; i < t; ++i) {
        bigdim *= d;
        check_dense_dim(bigdim, "haar_simplex_moment");
    }
    // E[p_{i1}...p_{it}] over Dirichlet(1,...,1) depends only on multiplicities.
    double rising = 1.0;
    for (int i = 0; i < t; ++i) rising *= d + i;

    Vector diag(bigdim);
    std::vector<int> digits(t, 0);
    std::vector<int> mult(d, 0);
    for (long long n = 0; n < bigdim; ++n) {
        std::fill(mult.begin(), mult.end(), 0);
        for (int k = 0; k < t; ++k) ++mult[digits[k]];
        double num = 1.0;
        for (int v = 0; v < d; ++v) {
            for (int f = 2; f <= mult[v]; ++f) num *= f;
        }
        diag(n) = Complex(num / rising, 0.0);
        for (int k = t - 1; k >= 0; --k) {
            if (++digits[k] < d) break;
            digits[k] = 0;
        }
    }

    MomentOperator out;
    out.space = SpaceKind::simplex;
    out.local_dims = FactorShape(std::vector<int>{d});
    out.t = t;
    out.matrix = diag.asDiagonal();
    return out;
}

MomentOperator haar_mixed_moment(int dA, int dB, int t) {
    const MomentOperator proj = haar_projective_moment(dA * dB, t);
    const FactorShape shape = FactorShape::bipartite_copies(dA, dB, t);
    std::vector<int> traced;
    for (int i = 0; i < t; ++i) traced.push_back(2 * i + 1);

    MomentOperator out;
    out.space = SpaceKind::mixed;
    out.local_dims = FactorShape(std::vector<int>{dA});
    out.t = t;
    out.matrix = partial_trace(proj.matrix, shape, traced);
    return out;
}

// ---------------------------------------------------------------------------
// Unitary channel moments via Weingarten calculus
// ---------------------------------------------------------------------------

RealMatrix weingarten_matrix(int d, int t) {
    if (d < 1) throw validation_error("weingarten_matrix: d must be positive");
    if (t < 1 || t > 4) throw validation_error("weingarten_matrix: t out of range [1,4]");
    const auto perms = Permutation::all(t);
    const int n = static_cast<int>(perms.size());
    RealMatrix gram(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int cycles = perms[i].inverse().after(perms[j]).cycle_count();
            gram(i, j) = std::pow(static_cast<double>(d), cycles);
        }
    }
    // Pseudo-inverse handles the singular d < t case.
    Eigen::JacobiSVD<RealMatrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = kRankTol * sv(0);
    RealVector inv = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) {
        if (sv(i) > cut) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix haar_channel_moment_raw(int d, int t) {
    if (t < 1 || t > 3) throw validation_error("haar_channel_moment_raw: t out of range [1,3]");
    long long bigdim = 1;
    for (int i = 0; i < 2 * t; ++i) {
        bigdim *= d;
        check_dense_dim(bigdim, "haar_channel_moment_raw");
    }
    const auto perms = Permutation::all(t);
    const int n = static_cast<int>(perms.size());
    const RealMatrix wg = weingarten_matrix(d, t);

    // M_{(i1 k1..it kt),(j1 l1..jt lt)} = int prod U_{im jm} prod U*_{km lm} dU
    //   = sum_{sigma,tau} [i_m = k_{sigma(m)}][j_m = l_{tau(m)}] Wg(sigma^-1 tau).
    Matrix out = Matrix::Zero(bigdim, bigdim);
    std::vector<int> rd(2 * t), cd(2 * t);
    std::vector<int> row_feasible, col_feasible;
    for (long long r = 0; r < bigdim; ++r) {
        long long rr = r;
        for (int k = 2 * t - 1; k >= 0; --k) {
            rd[k] = static_cast<int>(rr % d);
            rr /= d;
        }
        row_feasible.clear();
        for (int s = 0; s < n; ++s) {
            bool ok = true;
            for (int m = 0; m < t && ok; ++m) {
                ok = rd[2 * m] == rd[2 * perms[s](m) + 1];
            }
            if (ok) row_feasible.push_back(s);
        }
        if (row_feasible.empty()) continue;
        for (long long c = 0; c < bigdim; ++c) {
            long long cc = c;
            for (int k = 2 * t - 1; k >= 0; --k) {
                cd[k] = static_cast<int>(cc % d);
                cc /= d;
            }
            col_feasible.clear();
            for (int s = 0; s < n; ++s) {
                bool ok = true;
                for (int m = 0; m < t && ok; ++m) {
                    ok = cd[2 * m] == cd[2 * perms[s](m) + 1];
                }
                if (ok) col_feasible.push_back(s);
            }
            double val = 0.0;
            for (int s : row_feasible)
                for (int q : col_feasible) val += wg(s, q);
            out(r, c) = Complex(val, 0.0);
        }
    }
    return out;
}

MomentOperator haar_unitary_channel_moment(int d, int t) {
    MomentOperator out;
    out.space = SpaceKind::channel;
    out.local_dims = FactorShape(std::vector<int>{d, d});
    out.t = t;
    out.matrix = reshuffle_copies(haar_channel_moment_raw(d, t), d, t);
    return out;
}

// ---------------------------------------------------------------------------
// Distances and polynomial averages
// ---------------------------------------------------------------------------

double delta(const MomentOperator& t1, const MomentOperator& t2, const SchattenIndex& p) {
    if (t1.space != t2.space || !(t1.local_dims == t2.local_dims) || t1.t != t2.t) {
        throw validation_error("delta: moment operators have mismatched metadata");
    }
    return schatten_norm(static_cast<Matrix>(t1.matrix - t2.matrix), p);
}

double average_polynomial(const PolynomialCoefficients& g, const MomentOperator& T) {
    if (g.matrix.rows() != T.matrix.rows()) {
        throw validation_error("average_polynomial: dimension mismatch");
    }
    const Complex tr = (g.matrix.transpose().cwiseProduct(T.matrix)).sum();
    if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real()))) {
        throw computation_error("average_polynomial: trace has a large imaginary part");
    }
    return tr.real();
}

double frame_potential(const Ensemble& e, int t) {
    e.validate();
    if (e.kind != EnsembleKind::pure_state) {
        throw validation_error("frame_potential: ensemble must hold pure states");
    }
    if (t < 1) throw validation_error("frame_potential: t must be positive");
    const size_t m = e.points.size();
    double acc = 0.0;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            const Complex ip = (e.points[i].adjoint() * e.points[j])(0, 0);
            acc += e.weights[i] * e.weights[j] * std::pow(std::norm(ip), t);
        }
    }
    return acc;
}

double welch_gap(const Ensemble& e, int t) {
    const double f = frame_potential(e, t);
    const double D = static_cast<double>(sym_dim(e.dim(), t));
    const double radicand = (D - 1.0) / D * (f - 1.0 / D);
    if (radicand < -1e-12) {
        throw computation_error("welch_gap: frame potential below the Welch bound");
    }
    return std::sqrt(std::max(radicand, 0.0));
}

} // namespace pfd
