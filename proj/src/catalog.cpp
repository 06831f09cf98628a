#include "pfd/catalog.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

#include "pfd/bounds.hpp"

namespace pfd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      eng_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_id))) {}

double RngStream::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

Complex RngStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
}

Vector sample_haar_state(int d, RngStream& rng) {
    if (d < 1) throw validation_error("sample_haar_state: d must be positive");
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
    return v / v.norm();
}

Matrix sample_haar_unitary(int d, RngStream& rng) {
    if (d < 1) throw validation_error("sample_haar_unitary: d must be positive");
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Catalog of exact designs
// ---------------------------------------------------------------------------

namespace {

Matrix column2(Complex a, Complex b) {
    Matrix v(2, 1);
    v(0, 0) = a;
    v(1, 0) = b;
    return v;
}

std::vector<Matrix> tetrahedral_sic() {
    // |psi_k> = (|0> + sqrt(2) w^k |1>)/sqrt(3) for k = 0,1,2 plus |0>;
    // pairwise |<.|.>|^2 = 1/3.
    const double s13 = std::sqrt(1.0 / 3.0);
    const double s23 = std::sqrt(2.0 / 3.0);
    std::vector<Matrix> pts;
    pts.push_back(column2(1.0, 0.0));
    for (int k = 0; k < 3; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 3.0;
        pts.push_back(column2(s13, s23 * Complex(std::cos(phi), std::sin(phi))));
    }
    return pts;
}

std::vector<Matrix> octahedron() {
    const double s = std::sqrt(0.5);
    std::vector<Matrix> pts;
    pts.push_back(column2(1.0, 0.0));
    pts.push_back(column2(0.0, 1.0));
    pts.push_back(column2(s, s));
    pts.push_back(column2(s, -s));
    pts.push_back(column2(s, Complex(0.0, s)));
    pts.push_back(column2(s, Complex(0.0, -s)));
    return pts;
}

} // namespace

std::vector<std::string> known_design_names() {
    return {"onb_d2_t1", "sic_d2_t2", "mub_d2_t2", "octahedron_d2_t3"};
}

int known_design_order(const std::string& name) {
    if (name == "onb_d2_t1") return 1;
    if (name == "sic_d2_t2") return 2;
    if (name == "mub_d2_t2") return 2;
    if (name == "octahedron_d2_t3") return 3;
    throw validation_error("unknown design '" + name + "'");
}

Ensemble known_design(const std::string& name) {
    std::vector<Matrix> pts;
    if (name == "onb_d2_t1") {
        pts = {column2(1.0, 0.0), column2(0.0, 1.0)};
    } else if (name == "sic_d2_t2") {
        pts = tetrahedral_sic();
    } else if (name == "mub_d2_t2" || name == "octahedron_d2_t3") {
        pts = octahedron();
    } else {
        throw validation_error("unknown design '" + name + "'");
    }
    Ensemble e = Ensemble::uniform(EnsembleKind::pure_state, std::move(pts));

    // Fail closed: reject the catalog entry unless the Welch bound saturates.
    const int t = known_design_order(name);
    const double f = frame_potential(e, t);
    const double target = 1.0 / static_cast<double>(sym_dim(e.dim(), t));
    if (std::abs(f - target) > 1e-10) {
        throw computation_error("catalog design '" + name + "' failed the Gram check: F_t = " +
                                std::to_string(f) + ", expected " + std::to_string(target));
    }
    return e;
}

} // namespace pfd
