#pragma once

#include "ffd/mesh.hpp"

namespace ffd {

// Watertight unit-ish primitives used by demos and tests. All generators are
// deterministic and produce label-0 meshes unless noted.

// Subdivided icosahedron with radius `radius`; subdivisions = 4 gives the
// 2562-vertex / 5120-triangle sphere.
TemplateMesh make_icosphere(int subdivisions, double radius = 1.0,
                            const Vec3& center = Vec3::Zero());

// Icosphere scaled per axis.
TemplateMesh make_ellipsoid(int subdivisions, const Vec3& semi_axes,
                            const Vec3& center = Vec3::Zero());

// Axis-aligned box from 12 triangles.
TemplateMesh make_box(const Vec3& min_corner, const Vec3& max_corner);

// Torus around the z axis: major radius R, tube radius r.
TemplateMesh make_torus(double major_radius, double minor_radius,
                        int major_segments = 32, int minor_segments = 16);

}  // namespace ffd
