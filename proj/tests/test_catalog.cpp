#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <numbers>

#include "pfd/bounds.hpp"
#include "pfd/catalog.hpp"

using namespace pfd;

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(123, 7), b(123, 7), c(123, 8);
    bool identical = true, distinct = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        identical = identical && x == b.next_u64();
        distinct = distinct || x != c.next_u64();
    }
    CHECK(identical);
    CHECK(distinct);

    RngStream s1(5, 0), s2(5, 0);
    for (int i = 0; i < 100; ++i) {
        const Vector v1 = sample_haar_state(3, s1);
        const Vector v2 = sample_haar_state(3, s2);
        CHECK((v1 - v2).norm() == 0.0);
    }
}

TEST_CASE("normal generator moments") {
    RngStream rng(6, 0);
    const int n = 100'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.02);
    CHECK(rng.uniform() >= 0.0);
    CHECK(rng.uniform() < 1.0);
}

TEST_CASE("haar states are normalized with the right first moment") {
    RngStream rng(7, 0);
    for (int i = 0; i < 10'000; ++i) {
        CHECK(std::abs(sample_haar_state(3, rng).norm() - 1.0) <= 1e-12);
    }
    Matrix acc = Matrix::Zero(2, 2);
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        const Vector psi = sample_haar_state(2, rng);
        acc.noalias() += psi * psi.adjoint();
    }
    acc /= static_cast<double>(n);
    CHECK(schatten_norm(static_cast<Matrix>(acc - Matrix::Identity(2, 2) / 2.0),
                        SchattenIndex(2)) < 5e-3);
}

TEST_CASE("haar unitaries are unitary with Schur-orthogonal first moments") {
    RngStream rng(8, 0);
    for (int i = 0; i < 1000; ++i) {
        const Matrix u = sample_haar_unitary(3, rng);
        CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() <= 1e-10);
    }

    // E[U_ij conj(U_kl)] = delta_ik delta_jl / d.
    const int d = 2, n = 100'000;
    Matrix acc = Matrix::Zero(d * d, d * d);
    for (int s = 0; s < n; ++s) {
        const Matrix u = sample_haar_unitary(d, rng);
        Vector v(d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(i * d + j) = u(i, j);
        acc.noalias() += v * v.adjoint();
    }
    acc /= static_cast<double>(n);
    // Compared per unit trace: the raw objects carry trace d.
    CHECK(schatten_norm(static_cast<Matrix>(acc / d - Matrix::Identity(d * d, d * d) / (d * d)),
                        SchattenIndex(2)) < 5e-3);
}

TEST_CASE("haar unitary eigenphases are uniform on the circle") {
    RngStream rng(9, 0);
    const int n = 10'000, bins = 16;
    std::vector<long> counts(bins, 0);
    for (int s = 0; s < n; ++s) {
        const Matrix u = sample_haar_unitary(2, rng);
        Eigen::ComplexEigenSolver<Matrix> es(u, false);
        for (int k = 0; k < 2; ++k) {
            const double theta = std::arg(es.eigenvalues()(k));
            int bin = static_cast<int>((theta + std::numbers::pi) /
                                       (2.0 * std::numbers::pi) * bins);
            if (bin == bins) bin = 0;
            ++counts[static_cast<size_t>(bin)];
        }
    }
    const double expected = 2.0 * n / bins;
    double chi2 = 0.0;
    for (long c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // df = 15; the 99.9% quantile is 37.7.
    CHECK(chi2 < 37.7);
}

TEST_CASE("catalog designs verify at their advertised order and fail above it") {
    // First order at which each entry stops being exact. The d=2 MUB set is
    // the octahedron and stays an exact 3-design, so its gap opens at t = 4.
    const std::map<std::string, int> first_failing{{"onb_d2_t1", 2},
                                                   {"sic_d2_t2", 3},
                                                   {"mub_d2_t2", 4},
                                                   {"octahedron_d2_t3", 4}};
    for (const auto& name : known_design_names()) {
        const Ensemble e = known_design(name);
        const int t = known_design_order(name);
        const double target = 1.0 / static_cast<double>(sym_dim(e.dim(), t));
        CHECK(std::abs(frame_potential(e, t) - target) <= 1e-10);

        const int tf = first_failing.at(name);
        const double next = 1.0 / static_cast<double>(sym_dim(e.dim(), tf));
        CHECK(frame_potential(e, tf) > next + 1e-3);
    }
    CHECK(frame_potential(known_design("onb_d2_t1"), 1) == doctest::Approx(0.5));
    CHECK(frame_potential(known_design("sic_d2_t2"), 2) == doctest::Approx(1.0 / 3.0));
    CHECK(frame_potential(known_design("mub_d2_t2"), 2) == doctest::Approx(1.0 / 3.0));
    CHECK(frame_potential(known_design("octahedron_d2_t3"), 3) == doctest::Approx(0.25));

    CHECK_THROWS_AS(known_design("tetrahedron_d7"), validation_error);
}

TEST_CASE("catalog designs give zero delta against the Haar reference") {
    for (const auto& name : known_design_names()) {
        const Ensemble e = known_design(name);
        const int t = known_design_order(name);
        const MomentOperator emp = empirical_moment(e, t);
        const MomentOperator haar = haar_projective_moment(e.dim(), t);
        CHECK(delta(emp, haar, SchattenIndex(1)) <= 1e-10);
        CHECK(delta(emp, haar, SchattenIndex::infinity()) <= 1e-10);
    }
}
