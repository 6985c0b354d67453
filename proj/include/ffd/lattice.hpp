#pragma once

#include <array>
#include <filesystem>

#include "ffd/bspline.hpp"
#include "ffd/types.hpp"

namespace ffd {

struct TemplateMesh;

// Trivariate control grid over an axis-aligned domain. Control points sit at
// the Greville abscissae of the per-axis clamped knot vectors, so the
// zero-displacement lattice reproduces the identity map.
struct ControlLattice {
    Vec3i dims;                      // control counts per axis, each >= 4
    Box3 domain;                     // mm
    std::array<KnotVector, 3> knots; // per-axis, over [0, 1]
    Points rest_positions;           // psi x 3, Greville points mapped into domain
    Points displacements;            // psi x 3, zero-initialized

    int num_controls() const { return dims.x() * dims.y() * dims.z(); }

    // x-fastest flattening, matching the voxel grid ordering convention.
    int flat_index(int i, int j, int k) const {
        return i + dims.x() * (j + dims.y() * k);
    }

    Vec3 extent() const { return domain.sizes(); }
    double diagonal() const { return domain.sizes().norm(); }

    // Per-axis control spacing (domain extent over span count); this is the
    // "grid resolution" scale used for sampling covariance.
    Vec3 spacing() const {
        return extent().cwiseQuotient((dims.array() - 1).cast<double>().matrix());
    }

    // Map a point in mm to normalized (s, t, u) in [0, 1]^3.
    Vec3 normalize(const Vec3& p) const {
        return (p - domain.min()).cwiseQuotient(extent());
    }
};

ControlLattice build_lattice(const Box3& bounding_box, const Vec3i& dims,
                             double padding_fraction = 0.05);
ControlLattice build_lattice(const TemplateMesh& mesh, const Vec3i& dims,
                             double padding_fraction = 0.05);

// Grid-space trilinear resampling of the coarse displacement field at each
// fine control's normalized grid coordinate. Both lattices must share the
// same domain.
Points upsample_displacements(const ControlLattice& coarse,
                              const ControlLattice& fine);

// Displacement lattice files used by `fit` output and the `deform` command.
void save_lattice(const ControlLattice& lattice, const std::filesystem::path& path);
ControlLattice load_lattice(const std::filesystem::path& path);

}  // namespace ffd
