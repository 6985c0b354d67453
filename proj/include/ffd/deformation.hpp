#pragma once

#include <filesystem>

#include "ffd/lattice.hpp"
#include "ffd/types.hpp"

namespace ffd {

// Sparse N x psi matrix of trivariate B-spline weights. Row r holds the
// products Bx_i(s) By_j(t) Bz_k(u) of the point's active basis functions, so
// each row has at most 64 nonnegative entries summing to 1.
struct DeformationTensor {
    SparseRowMatrix weights;  // CSR, canonical order
    Points local_coords;      // N x 3 normalized (s, t, u), kept for diagnostics

    Eigen::Index rows() const { return weights.rows(); }
    Eigen::Index cols() const { return weights.cols(); }
};

DeformationTensor assemble_tensor(const CRef<Points>& points,
                                  const ControlLattice& lattice);

// points + B * displacements. With zero displacements the output equals the
// input exactly.
Points apply_ffd(const DeformationTensor& tensor, const ControlLattice& lattice,
                 const CRef<Points>& points);

// Binary sparse format: rows/cols/nnz as 64-bit LE, then CSR row offsets,
// column indices (64-bit LE) and values (64-bit LE doubles).
void save_tensor(const DeformationTensor& tensor, const std::filesystem::path& path);
DeformationTensor load_tensor(const std::filesystem::path& path);

}  // namespace ffd
