#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ffd/lattice.hpp"
#include "ffd/types.hpp"

namespace ffd {

// Per-control-point sample of k surface-point indices, drawn with replacement
// with probability proportional to a Gaussian centered at the control point
// (sigma = per-axis control spacing).
struct SampleSet {
    int k = 16;
    uint64_t seed = 0;
    Vec3 sigma = Vec3::Zero();
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> indices;  // psi x k
    std::vector<int> uniform_fallback;  // controls whose weights underflowed to zero

    bool used_fallback() const { return !uniform_fallback.empty(); }
};

SampleSet draw_samples(const CRef<Points>& surface_points,
                       const ControlLattice& lattice, int k, uint64_t seed);

// Arithmetic mean of the sampled field values per control point. field_values
// is points-by-channels; result is controls-by-channels.
Eigen::MatrixXd field_expectation(const SampleSet& samples,
                                  const CRef<Eigen::MatrixXd>& field_values);

// Unnormalized Gaussian importance weights for one control point
// (diagonal covariance, one sigma per axis).
Eigen::VectorXd gaussian_weights(const CRef<Points>& surface_points,
                                 const Vec3& center, const Vec3& sigma);

void save_samples(const SampleSet& samples, const std::filesystem::path& path);
SampleSet load_samples(const std::filesystem::path& path);

}  // namespace ffd
