#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "pfd/catalog.hpp"
#include "pfd/linalg.hpp"

using namespace pfd;

namespace {

Matrix random_matrix(int rows, int cols, RngStream& rng) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

Matrix random_hermitian(int d, RngStream& rng) {
    const Matrix g = random_matrix(d, d, rng);
    return (g + g.adjoint()) / 2.0;
}

// Frobenius norm by direct entry summation, independent of the SVD path.
double frobenius_direct(const Matrix& m) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
    return std::sqrt(acc);
}

// Singular values as square roots of eigenvalues of A^dag A.
RealVector singular_values_via_gram(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
    RealVector ev = es.eigenvalues().reverse();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    return ev;
}

// Brute-force partial trace walking every matrix entry once.
Matrix partial_trace_brute(const Matrix& a, const std::vector<int>& dims,
                           const std::vector<int>& traced) {
    const int nf = static_cast<int>(dims.size());
    std::vector<bool> is_traced(nf, false);
    for (int f : traced) is_traced[f] = true;
    long long dk = 1;
    for (int f = 0; f < nf; ++f)
        if (!is_traced[f]) dk *= dims[f];

    auto decompose = [&](long long idx) {
        std::vector<int> digits(nf);
        for (int f = nf - 1; f >= 0; --f) {
            digits[f] = static_cast<int>(idx % dims[f]);
            idx /= dims[f];
        }
        return digits;
    };
    auto kept_index = [&](const std::vector<int>& digits) {
        long long idx = 0;
        for (int f = 0; f < nf; ++f)
            if (!is_traced[f]) idx = idx * dims[f] + digits[f];
        return idx;
    };

    Matrix out = Matrix::Zero(dk, dk);
    for (long long r = 0; r < a.rows(); ++r) {
        const auto rd = decompose(r);
        for (long long c = 0; c < a.cols(); ++c) {
            const auto cd = decompose(c);
            bool diagonal = true;
            for (int f : traced) diagonal = diagonal && rd[f] == cd[f];
            if (diagonal) out(kept_index(rd), kept_index(cd)) += a(r, c);
        }
    }
    return out;
}

const SchattenIndex kAllP[] = {SchattenIndex(1), SchattenIndex(2), SchattenIndex(3),
                               SchattenIndex::infinity()};

} // namespace

TEST_CASE("SchattenIndex exponents and parsing") {
    CHECK(SchattenIndex(1).holder_exponent() == 0.0);
    CHECK(SchattenIndex::infinity().holder_exponent() == 1.0);
    CHECK(SchattenIndex(2).holder_exponent() == doctest::Approx(0.5));
    CHECK(SchattenIndex::infinity().reciprocal() == 0.0);
    CHECK(SchattenIndex::parse("inf").is_infinity());
    CHECK(SchattenIndex::parse("2.5").value() == 2.5);
    CHECK(SchattenIndex::parse(SchattenIndex(3).str()).value() == 3.0);
    CHECK_THROWS_AS(SchattenIndex(0.5), validation_error);
    CHECK_THROWS_AS(SchattenIndex::parse("x"), validation_error);
}

TEST_CASE("kron identities") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK((kron(i2, i2) - Matrix::Identity(4, 4)).norm() == 0.0);

    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const Matrix k = kron(p0, p1);
    CHECK(k(1, 1) == Complex(1.0, 0.0));
    CHECK(k.cwiseAbs().sum() == 1.0);
}

TEST_CASE("kron Frobenius norm is multiplicative") {
    RngStream rng(11, 0);
    for (int it = 0; it < 100; ++it) {
        const Matrix a = random_matrix(3, 2, rng);
        const Matrix b = random_matrix(2, 4, rng);
        CHECK(frobenius_direct(kron(a, b)) ==
              doctest::Approx(frobenius_direct(a) * frobenius_direct(b)).epsilon(1e-12));
    }
}

TEST_CASE("singular values of simple matrices") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -4.0;
    const RealVector sv = singular_values(d);
    CHECK(sv(0) == doctest::Approx(4.0));
    CHECK(sv(1) == doctest::Approx(3.0));

    RngStream rng(12, 0);
    const Vector psi = sample_haar_state(5, rng);
    const RealVector sp = singular_values(psi * psi.adjoint());
    CHECK(sp(0) == doctest::Approx(1.0));
    CHECK(sp.tail(4).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(numerical_rank(sp) == 1);
}

TEST_CASE("singular values match the eigen-decomposition oracle") {
    RngStream rng(13, 0);
    const Matrix a = random_matrix(8, 8, rng);
    const RealVector sv = singular_values(a);
    const RealVector oracle = singular_values_via_gram(a);
    for (int i = 0; i < 8; ++i) CHECK(sv(i) == doctest::Approx(oracle(i)).epsilon(1e-10));
}

TEST_CASE("schatten_norm on diagonal and unitary matrices") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.5;
    d(1, 1) = -0.5;
    CHECK(schatten_norm(d, SchattenIndex(1)) == doctest::Approx(1.0));
    CHECK(schatten_norm(d, SchattenIndex(2)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(schatten_norm(d, SchattenIndex::infinity()) == doctest::Approx(0.5));

    RngStream rng(14, 0);
    const Matrix u = sample_haar_unitary(4, rng);
    CHECK(schatten_norm(u, SchattenIndex(2)) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("schatten_norm agrees with trace-of-abs and Frobenius formulas") {
    RngStream rng(15, 0);
    for (int it = 0; it < 20; ++it) {
        const Matrix a = random_matrix(6, 6, rng);
        const RealVector oracle = singular_values_via_gram(a);
        CHECK(schatten_norm(a, SchattenIndex(1)) ==
              doctest::Approx(oracle.sum()).epsilon(1e-10));
        CHECK(schatten_norm(a, SchattenIndex(2)) ==
              doctest::Approx(frobenius_direct(a)).epsilon(1e-10));
    }
}

TEST_CASE("schatten norm monotonicity in p") {
    RngStream rng(16, 0);
    for (int it = 0; it < 100; ++it) {
        const Matrix a = random_matrix(5, 5, rng);
        const RealVector sv = singular_values(a);
        const double n1 = schatten_norm(sv, SchattenIndex(1));
        const double n2 = schatten_norm(sv, SchattenIndex(2));
        const double ninf = schatten_norm(sv, SchattenIndex::infinity());
        CHECK(n1 >= n2 - 1e-12);
        CHECK(n2 >= ninf - 1e-12);
    }
}

TEST_CASE("partial trace of Bell and product states") {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const FactorShape shape(std::vector<int>{2, 2});
    const Matrix reduced = partial_trace(bell * bell.adjoint(), shape, {1});
    CHECK((reduced - Matrix::Identity(2, 2) / 2.0).norm() < 1e-14);

    RngStream rng(17, 0);
    const Vector psi = sample_haar_state(2, rng);
    const Vector phi = sample_haar_state(3, rng);
    const Vector prod = kron(psi, phi);
    const Matrix red = partial_trace(prod * prod.adjoint(), FactorShape(std::vector<int>{2, 3}), {1});
    CHECK((red - psi * psi.adjoint()).norm() < 1e-12);
}

TEST_CASE("partial trace against the brute-force oracle") {
    RngStream rng(18, 0);
    const std::vector<int> dims{2, 3, 2};
    const Matrix a = random_matrix(12, 12, rng);
    const FactorShape shape(dims);
    for (const auto& traced : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}}) {
        const Matrix got = partial_trace(a, shape, traced);
        const Matrix want = partial_trace_brute(a, dims, traced);
        CHECK((got - want).norm() < 1e-12);
        CHECK(std::abs(got.trace() - a.trace()) < 1e-10);
    }
    CHECK_THROWS_AS(partial_trace(a, shape, {3}), validation_error);
    CHECK_THROWS_AS(partial_trace(a, shape, {0, 0}), validation_error);
}

TEST_CASE("partial trace composition is order independent") {
    RngStream rng(19, 0);
    const Matrix a = random_matrix(12, 12, rng);
    const FactorShape shape(std::vector<int>{2, 3, 2});
    const Matrix both = partial_trace(a, shape, {1, 2});
    const Matrix first = partial_trace(a, shape, {1});               // leaves (2, 2)
    const Matrix then = partial_trace(first, FactorShape(std::vector<int>{2, 2}), {1});
    const Matrix second = partial_trace(a, shape, {2});              // leaves (2, 3)
    const Matrix other = partial_trace(second, FactorShape(std::vector<int>{2, 3}), {1});
    CHECK((both - then).norm() < 1e-12);
    CHECK((both - other).norm() < 1e-12);
}

TEST_CASE("trace norm contracts under partial trace") {
    RngStream rng(20, 0);
    const FactorShape shape(std::vector<int>{2, 3});
    for (int it = 0; it < 1000; ++it) {
        const Matrix q = random_hermitian(6, rng);
        const Matrix qa = partial_trace(q, shape, {1});
        CHECK(schatten_norm(qa, SchattenIndex(1)) <=
              schatten_norm(q, SchattenIndex(1)) + 1e-10);
    }
}

TEST_CASE("partial trace Lipschitz constant dB^((p-1)/p)") {
    RngStream rng(21, 0);
    const FactorShape shape(std::vector<int>{3, 2});
    for (int it = 0; it < 1000; ++it) {
        const Matrix q = random_hermitian(6, rng);
        const RealVector sq = singular_values(q);
        const Matrix qa = partial_trace(q, shape, {1});
        const RealVector sa = singular_values(qa);
        for (const auto& p : kAllP) {
            const double lip = std::pow(2.0, p.holder_exponent());
            CHECK(schatten_norm(sa, p) <= lip * schatten_norm(sq, p) + 1e-10);
        }
    }
}

TEST_CASE("permutation operators") {
    CHECK((permutation_operator(Permutation::identity(2), 3) - Matrix::Identity(9, 9)).norm() ==
          0.0);

    const Matrix swap = permutation_operator(Permutation::transposition(2, 0, 1), 2);
    CHECK(swap.trace().real() == doctest::Approx(2.0));
    Vector v01 = Vector::Zero(4);
    v01(1) = 1.0; // |0,1>
    Vector v10 = Vector::Zero(4);
    v10(2) = 1.0; // |1,0>
    CHECK((swap * v01 - v10).norm() == 0.0);

    for (int d : {2, 3}) {
        for (const auto& sigma : Permutation::all(3)) {
            const Matrix p = permutation_operator(sigma, d);
            CHECK(p.trace().real() ==
                  doctest::Approx(std::pow(static_cast<double>(d), sigma.cycle_count())));
        }
    }
}

TEST_CASE("permutation operators form a group representation") {
    const auto perms = Permutation::all(3);
    for (const auto& s : perms) {
        for (const auto& q : perms) {
            const Matrix lhs = permutation_operator(s, 2) * permutation_operator(q, 2);
            const Matrix rhs = permutation_operator(s.after(q), 2);
            CHECK((lhs - rhs).norm() == 0.0);
        }
    }
}

TEST_CASE("cycle counts") {
    CHECK(Permutation::identity(3).cycle_count() == 3);
    CHECK(Permutation::transposition(2, 0, 1).cycle_count() == 1);
    CHECK(Permutation(std::vector<int>{1, 2, 0}).cycle_count() == 1);

    // sum_sigma d^cycl(sigma) = t! binom(d+t-1, t)
    for (int d : {2, 3}) {
        double acc = 0.0;
        for (const auto& sigma : Permutation::all(3)) {
            acc += std::pow(static_cast<double>(d), sigma.cycle_count());
        }
        double binom = d * (d + 1) * (d + 2) / 6.0;
        CHECK(acc == doctest::Approx(6.0 * binom));
    }
}

TEST_CASE("symmetric projector") {
    const Matrix pi22 = symmetric_projector(2, 2);
    CHECK(pi22.trace().real() == doctest::Approx(3.0));
    Eigen::SelfAdjointEigenSolver<Matrix> es(pi22);
    const RealVector ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(0.0));
    for (int i = 1; i < 4; ++i) CHECK(ev(i) == doctest::Approx(1.0));

    CHECK((symmetric_projector(3, 1) - Matrix::Identity(3, 3)).norm() == 0.0);

    for (int d : {2, 3}) {
        for (int t : {2, 3}) {
            const Matrix pi = symmetric_projector(d, t);
            CHECK((pi * pi - pi).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(hermiticity_error(pi) < 1e-14);
            for (const auto& sigma : Permutation::all(t)) {
                const Matrix p = permutation_operator(sigma, d);
                CHECK((pi * p - p * pi).norm() < 1e-12);
            }
        }
    }
}

TEST_CASE("reshuffle is a norm-preserving involution") {
    RngStream rng(22, 0);
    const FactorShape shape(std::vector<int>{2, 3});
    for (int it = 0; it < 100; ++it) {
        const Matrix a = random_matrix(6, 6, rng);
        const Matrix r = reshuffle(a, shape);
        CHECK(frobenius_direct(r) == doctest::Approx(frobenius_direct(a)).epsilon(1e-13));
        const Matrix back = reshuffle(r, 2, 2, 3, 3);
        CHECK((back - a).norm() == 0.0);
    }
}

TEST_CASE("reshuffle entries follow the fixed convention") {
    RngStream rng(23, 0);
    const Matrix a = random_matrix(6, 6, rng);
    const Matrix r = reshuffle(a, FactorShape(std::vector<int>{2, 3}));
    REQUIRE(r.rows() == 4);
    REQUIRE(r.cols() == 9);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 3; ++l)
                    CHECK(r(i * 2 + j, k * 3 + l) == a(i * 3 + k, j * 3 + l));
}

TEST_CASE("reshuffled identity is the unnormalized maximally entangled projector") {
    const Matrix r = reshuffle(Matrix::Identity(4, 4), FactorShape(std::vector<int>{2, 2}));
    const RealVector sv = singular_values(r);
    CHECK(sv(0) == doctest::Approx(2.0));
    CHECK(numerical_rank(sv) == 1);
}

TEST_CASE("reshuffle_copies reduces to reshuffle at t = 1") {
    RngStream rng(24, 0);
    const Matrix a = random_matrix(9, 9, rng);
    CHECK((reshuffle_copies(a, 3, 1) - reshuffle(a, FactorShape(std::vector<int>{3, 3}))).norm() ==
          0.0);

    const Matrix b = random_matrix(16, 16, rng);
    const Matrix rb = reshuffle_copies(b, 2, 2);
    CHECK(frobenius_direct(rb) == doctest::Approx(frobenius_direct(b)).epsilon(1e-13));
    CHECK((reshuffle_copies(rb, 2, 2) - b).norm() == 0.0);
}

TEST_CASE("product norm bounds") {
    const Matrix i3 = Matrix::Identity(3, 3);
    const auto w = product_norm_bound_check(i3, i3, SchattenIndex(2));
    CHECK(w.ab_ok);
    CHECK(w.aba_ok);
    CHECK(w.norm_ab == doctest::Approx(w.bound_ab));

    RngStream rng(25, 0);
    const Matrix u = sample_haar_unitary(3, rng);
    const Matrix b = random_matrix(3, 3, rng);
    for (const auto& p : kAllP) {
        CHECK(schatten_norm(static_cast<Matrix>(u * b), p) ==
              doctest::Approx(schatten_norm(b, p)).epsilon(1e-10));
    }

    for (int it = 0; it < 1000; ++it) {
        const Matrix a = random_matrix(4, 4, rng);
        const Matrix c = random_matrix(4, 4, rng);
        for (const auto& p : kAllP) {
            const auto witness = product_norm_bound_check(a, c, p);
            CHECK(witness.ab_ok);
            CHECK(witness.aba_ok);
        }
    }
}

TEST_CASE("hermiticity check and dense guard") {
    RngStream rng(26, 0);
    const Matrix h = random_hermitian(4, rng);
    CHECK(is_hermitian(h));
    Matrix g = h;
    g(0, 1) += Complex(0.0, 1e-6);
    CHECK(!is_hermitian(g));
    CHECK_THROWS_AS(symmetric_projector(11, 4), validation_error); // 14641 > guard
}
