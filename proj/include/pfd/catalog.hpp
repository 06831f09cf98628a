#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pfd/moments.hpp"

namespace pfd {

/// Seeded random stream. Identical (master_seed, stream_id) gives a
/// bit-identical sequence on every platform: mt19937_64 output is fixed by
/// the standard and the Gaussian transform below is explicit Box-Muller,
/// not the implementation-defined std::normal_distribution.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return eng_(); }
    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Independent standard normals in the real and imaginary parts.
    Complex complex_normal();

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Haar-random unit vector: d independent complex Gaussians, normalized.
Vector sample_haar_state(int d, RngStream& rng);

/// Haar-random unitary: Ginibre matrix, QR, R-diagonal phases divided out.
Matrix sample_haar_unitary(int d, RngStream& rng);

/// Names accepted by known_design().
std::vector<std::string> known_design_names();

/// The design order t advertised for a catalog entry.
int known_design_order(const std::string& name);

/// Exact designs with zero delta at their advertised t. Verified at load by
/// the Gram-matrix frame potential check; a failing entry throws.
///   onb_d2_t1        computational basis of C^2, 1-design
///   sic_d2_t2        tetrahedral SIC, 2-design
///   mub_d2_t2        three mutually unbiased bases of C^2, 2-design
///   octahedron_d2_t3 the same six states advertised as a 3-design
Ensemble known_design(const std::string& name);

} // namespace pfd
