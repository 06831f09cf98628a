#include "pfd/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace pfd {

void check_dense_dim(long long dim, const char* where) {
    if (dim < 1) {
        throw validation_error(std::string(where) + ": dimension must be positive");
    }
    if (dim > kMaxDenseDim) {
        throw validation_error(std::string(where) + ": dimension " + std::to_string(dim) +
                               " exceeds dense-storage guard " + std::to_string(kMaxDenseDim));
    }
}

// ---------------------------------------------------------------------------
// SchattenIndex
// ---------------------------------------------------------------------------

SchattenIndex::SchattenIndex(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) {
        throw validation_error("Schatten order must satisfy p >= 1");
    }
}

SchattenIndex SchattenIndex::infinity() {
    return SchattenIndex(std::numeric_limits<double>::infinity());
}

std::string SchattenIndex::str() const {
    if (is_infinity()) return "inf";
    if (p_ == std::floor(p_) && p_ < 1e15) {
        return std::to_string(static_cast<long long>(p_));
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", p_);
    return buf;
}

SchattenIndex SchattenIndex::parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return infinity();
    size_t pos = 0;
    double p = 0.0;
    try {
        p = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw validation_error("cannot parse Schatten order '" + s + "'");
    }
    if (pos != s.size()) {
        throw validation_error("cannot parse Schatten order '" + s + "'");
    }
    return SchattenIndex(p);
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = size();
    if (n == 0) throw validation_error("Permutation: empty image list");
    std::vector<bool> seen(n, false);
    for (int v : image_) {
        if (v < 0 || v >= n || seen[v]) {
            throw validation_error("Permutation: image list is not a bijection");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int i, int j) {
    auto p = identity(n);
    std::swap(p.image_[i], p.image_[j]);
    return p;
}

std::vector<Permutation> Permutation::all(int n) {
    if (n < 1 || n > 8) throw validation_error("Permutation::all: n out of range [1,8]");
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(size());
    for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& b) const {
    if (size() != b.size()) throw validation_error("Permutation::after: size mismatch");
    std::vector<int> im(size());
    for (int i = 0; i < size(); ++i) im[i] = image_[b.image_[i]];
    return Permutation(std::move(im));
}

int Permutation::cycle_count() const {
    std::vector<bool> seen(size(), false);
    int cycles = 0;
    for (int i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = image_[j]) seen[j] = true;
    }
    return cycles;
}

// ---------------------------------------------------------------------------
// FactorShape
// ---------------------------------------------------------------------------

FactorShape::FactorShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw validation_error("FactorShape: no factors");
    for (int d : dims_) {
        if (d < 1) throw validation_error("FactorShape: factor dimensions must be positive");
    }
}

FactorShape FactorShape::copies(int d, int t) {
    if (t < 1) throw validation_error("FactorShape::copies: t must be positive");
    return FactorShape(std::vector<int>(t, d));
}

FactorShape FactorShape::bipartite_copies(int dA, int dB, int t) {
    if (t < 1) throw validation_error("FactorShape::bipartite_copies: t must be positive");
    std::vector<int> dims;
    dims.reserve(2 * t);
    for (int i = 0; i < t; ++i) {
        dims.push_back(dA);
        dims.push_back(dB);
    }
    return FactorShape(std::move(dims));
}

long long FactorShape::flat_dim() const {
    long long prod = 1;
    for (int d : dims_) {
        if (prod > kMaxDenseDim * kMaxDenseDim / d) {
            throw validation_error("FactorShape: flattened dimension overflow");
        }
        prod *= d;
    }
    return prod;
}

// ---------------------------------------------------------------------------
// Products, norms, spectra
// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b) {
    check_dense_dim(a.rows() * b.rows(), "kron");
    check_dense_dim(a.cols() * b.cols(), "kron");
    return Eigen::kroneckerProduct(a, b);
}

Matrix kron_power(const Matrix& a, int t) {
    if (t < 0) throw validation_error("kron_power: t must be nonnegative");
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < t; ++i) out = kron(out, a);
    return out;
}

RealVector singular_values(const Matrix& a) {
    // Hermitian inputs (the common case here) take the eigensolver route;
    // the general case uses JacobiSVD, which unlike BDCSVD in Eigen 3.4 does
    // not produce silent NaN tails.
    RealVector sv;
    if (a.rows() == a.cols() && is_hermitian(a)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw computation_error("singular_values: eigensolver did not converge");
        }
        sv = es.eigenvalues().cwiseAbs();
        std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
    } else {
        Eigen::JacobiSVD<Matrix> svd(a);
        if (svd.info() != Eigen::Success) {
            throw computation_error("singular_values: SVD did not converge");
        }
        sv = svd.singularValues();
    }
    if (sv.hasNaN()) throw computation_error("singular_values: result contains NaN");
    return sv;
}

double schatten_norm(const RealVector& sv, const SchattenIndex& p) {
    if (sv.size() == 0) return 0.0;
    const double smax = sv(0);
    if (p.is_infinity() || smax == 0.0) return smax;
    // Scale by s_max so large p stays in range.
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        acc += std::pow(sv(i) / smax, p.value());
    }
    return smax * std::pow(acc, 1.0 / p.value());
}

double schatten_norm(const Matrix& a, const SchattenIndex& p) {
    return schatten_norm(singular_values(a), p);
}

int numerical_rank(const RealVector& sv) {
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cut = kRankTol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) ++r;
    }
    return r;
}

int numerical_rank(const Matrix& a) { return numerical_rank(singular_values(a)); }

double hermiticity_error(const Matrix& a) {
    if (a.rows() != a.cols()) throw validation_error("hermiticity_error: matrix not square");
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a) {
    const double scale = a.cwiseAbs().maxCoeff();
    return hermiticity_error(a) <= 1e-12 * std::max(scale, 1e-300);
}

// ---------------------------------------------------------------------------
// Partial trace
// ---------------------------------------------------------------------------

namespace {

// Offsets of all composite indices running over the given factor subset,
// with the remaining factors fixed at zero.
std::vector<long long> subset_offsets(const FactorShape& shape,
                                      const std::vector<long long>& strides,
                                      const std::vector<int>& subset) {
    long long count = 1;
    for (int f : subset) count *= shape.dim(f);
    std::vector<long long> offsets(static_cast<size_t>(count));
    std::vector<int> digits(subset.size(), 0);
    for (long long n = 0; n < count; ++n) {
        long long off = 0;
        for (size_t k = 0; k < subset.size(); ++k) off += digits[k] * strides[subset[k]];
        offsets[static_cast<size_t>(n)] = off;
        for (int k = static_cast<int>(subset.size()) - 1; k >= 0; --k) {
            if (++digits[k] < shape.dim(subset[k])) break;
            digits[k] = 0;
        }
    }
    return offsets;
}

std::vector<long long> row_major_strides(const FactorShape& shape) {
    std::vector<long long> strides(shape.factor_count());
    long long s = 1;
    for (int f = shape.factor_count() - 1; f >= 0; --f) {
        strides[f] = s;
        s *= shape.dim(f);
    }
    return strides;
}

} // namespace

Matrix partial_trace(const Matrix& a, const FactorShape& shape,
                     const std::vector<int>& traced) {
    if (a.rows() != a.cols()) throw validation_error("partial_trace: matrix not square");
    if (shape.flat_dim() != a.rows()) {
        throw validation_error("partial_trace: shape does not match matrix dimension");
    }
    std::vector<int> tr = traced;
    std::sort(tr.begin(), tr.end());
    if (std::adjacent_find(tr.begin(), tr.end()) != tr.end()) {
        throw validation_error("partial_trace: duplicate traced positions");
    }
    for (int f : tr) {
        if (f < 0 || f >= shape.factor_count()) {
            throw validation_error("partial_trace: traced position " + std::to_string(f) +
                                   " out of range");
        }
    }
    std::vector<int> kept;
    for (int f = 0; f < shape.factor_count(); ++f) {
        if (!std::binary_search(tr.begin(), tr.end(), f)) kept.push_back(f);
    }

    const auto strides = row_major_strides(shape);
    const auto kept_off = subset_offsets(shape, strides, kept);
    const auto tr_off = subset_offsets(shape, strides, tr);
    const long long dk = static_cast<long long>(kept_off.size());

    Matrix out = Matrix::Zero(dk, dk);
    for (long long r = 0; r < dk; ++r) {
        for (long long c = 0; c < dk; ++c) {
            Complex acc(0.0, 0.0);
            for (long long j = 0; j < static_cast<long long>(tr_off.size()); ++j) {
                acc += a(kept_off[static_cast<size_t>(r)] + tr_off[static_cast<size_t>(j)],
                         kept_off[static_cast<size_t>(c)] + tr_off[static_cast<size_t>(j)]);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Permutation operators and the symmetrizer
// ---------------------------------------------------------------------------

Matrix permutation_operator(const Permutation& sigma, int d) {
    const int t = sigma.size();
    long long D = 1;
    for (int i = 0; i < t; ++i) {
        D *= d;
        check_dense_dim(D, "permutation_operator");
    }
    const Permutation inv = sigma.inverse();
    Matrix out = Matrix::Zero(D, D);
    std::vector<int> digits(t, 0);
    for (long long col = 0; col < D; ++col) {
        long long row = 0;
        for (int k = 0; k < t; ++k) row = row * d + digits[inv(k)];
        out(row, col) = Complex(1.0, 0.0);
        for (int k = t - 1; k >= 0; --k) {
            if (++digits[k] < d) break;
            digits[k] = 0;
        }
    }
    return out;
}

Matrix symmetric_projector(int d, int t) {
    if (d < 1 || t < 1) throw validation_error("symmetric_projector: d, t must be positive");
    long long D = 1;
    for (int i = 0; i < t; ++i) {
        D *= d;
        check_dense_dim(D, "symmetric_projector");
    }
    Matrix acc = Matrix::Zero(D, D);
    const auto perms = Permutation::all(t);
    for (const auto& sigma : perms) acc += permutation_operator(sigma, d);
    return acc / static_cast<double>(perms.size());
}

// ---------------------------------------------------------------------------
// Reshuffling
// ---------------------------------------------------------------------------

Matrix reshuffle(const Matrix& a, int r1, int r2, int c1, int c2) {
    if (a.rows() != static_cast<long long>(r1) * r2 ||
        a.cols() != static_cast<long long>(c1) * c2) {
        throw validation_error("reshuffle: factor dimensions do not match matrix");
    }
    Matrix out(static_cast<long long>(r1) * c1, static_cast<long long>(r2) * c2);
    for (int i = 0; i < r1; ++i)
        for (int k = 0; k < r2; ++k)
            for (int j = 0; j < c1; ++j)
                for (int l = 0; l < c2; ++l)
                    out(static_cast<long long>(i) * c1 + j,
                        static_cast<long long>(k) * c2 + l) =
                        a(static_cast<long long>(i) * r2 + k,
                          static_cast<long long>(j) * c2 + l);
    return out;
}

Matrix reshuffle(const Matrix& a, const FactorShape& shape) {
    if (shape.factor_count() != 2) {
        throw validation_error("reshuffle: shape must have exactly 2 factors");
    }
    if (a.rows() != a.cols()) throw validation_error("reshuffle: matrix not square");
    return reshuffle(a, shape.dim(0), shape.dim(1), shape.dim(0), shape.dim(1));
}

Matrix reshuffle_copies(const Matrix& a, int d, int t) {
    long long D = 1;
    for (int i = 0; i < 2 * t; ++i) D *= d;
    if (a.rows() != D || a.cols() != D) {
        throw validation_error("reshuffle_copies: matrix does not match d^(2t)");
    }
    // Row digits (x1,y1,...,xt,yt), column digits (u1,v1,...,ut,vt) in base d;
    // per copy (x,y),(u,v) -> (x,u),(y,v).
    Matrix out(D, D);
    std::vector<int> rd(2 * t), cd(2 * t);
    for (long long r = 0; r < D; ++r) {
        long long rr = r;
        for (int k = 2 * t - 1; k >= 0; --k) {
            rd[k] = static_cast<int>(rr % d);
            rr /= d;
        }
        for (long long c = 0; c < D; ++c) {
            long long cc = c;
            for (int k = 2 * t - 1; k >= 0; --k) {
                cd[k] = static_cast<int>(cc % d);
                cc /= d;
            }
            long long nr = 0, nc = 0;
            for (int m = 0; m < t; ++m) {
                nr = (nr * d + rd[2 * m]) * d + cd[2 * m];
                nc = (nc * d + rd[2 * m + 1]) * d + cd[2 * m + 1];
            }
            out(nr, nc) = a(r, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Norm product bounds
// ---------------------------------------------------------------------------

ProductNormWitness product_norm_bound_check(const Matrix& a, const Matrix& b,
                                            const SchattenIndex& p) {
    if (a.cols() != b.rows()) {
        throw validation_error("product_norm_bound_check: incompatible dimensions");
    }
    if (b.rows() != b.cols()) {
        throw validation_error("product_norm_bound_check: B must be square");
    }
    const auto sa = singular_values(a);
    const auto sb = singular_values(b);
    const double a_p = schatten_norm(sa, p);
    const double a_inf = sa.size() ? sa(0) : 0.0;
    const double b_p = schatten_norm(sb, p);
    const double b_inf = sb.size() ? sb(0) : 0.0;
    constexpr double tol = 1e-10;

    ProductNormWitness w;
    w.norm_ab = schatten_norm(static_cast<Matrix>(a * b), p);
    w.bound_ab = std::min(a_p * b_inf, b_p * a_inf);
    w.ab_ok = w.norm_ab <= w.bound_ab + tol;
    w.norm_aba = schatten_norm(static_cast<Matrix>(a * b * a.adjoint()), p);
    w.bound_aba = std::min(a_p * a_inf * b_inf, b_p * a_inf * a_inf);
    w.aba_ok = w.norm_aba <= w.bound_aba + tol;
    return w;
}

} // namespace pfd
