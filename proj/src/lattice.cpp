#include "ffd/lattice.hpp"

#include <fstream>

#include <json.hpp>

#include "ffd/errors.hpp"
#include "ffd/mesh.hpp"

namespace ffd {

ControlLattice build_lattice(const Box3& bounding_box, const Vec3i& dims,
                             double padding_fraction) {
    if ((dims.array() < 4).any())
        fail("bad-dims", "lattice needs at least 4 control points per axis");
    if (padding_fraction < 0)
        fail("bad-dims", "padding_fraction must be nonnegative");
    const Vec3 sizes = bounding_box.sizes();
    if ((sizes.array() <= 0).any())
        fail("degenerate-bbox", "bounding box has zero extent on an axis");

    ControlLattice lat;
    lat.dims = dims;
    const Vec3 pad = sizes * padding_fraction;
    lat.domain = Box3(bounding_box.min() - pad, bounding_box.max() + pad);
    for (int a = 0; a < 3; ++a) lat.knots[a] = KnotVector::clamped_cubic(dims[a]);

    const int psi = lat.num_controls();
    lat.rest_positions.resize(psi, 3);
    for (int k = 0; k < dims.z(); ++k)
        for (int j = 0; j < dims.y(); ++j)
            for (int i = 0; i < dims.x(); ++i) {
                const Vec3 g(lat.knots[0].greville(i), lat.knots[1].greville(j),
                             lat.knots[2].greville(k));
                lat.rest_positions.row(lat.flat_index(i, j, k)) =
                    (lat.domain.min() + g.cwiseProduct(lat.domain.sizes())).transpose();
            }
    lat.displacements = Points::Zero(psi, 3);
    return lat;
}

ControlLattice build_lattice(const TemplateMesh& mesh, const Vec3i& dims,
                             double padding_fraction) {
    return build_lattice(mesh.bounding_box(), dims, padding_fraction);
}

Points upsample_displacements(const ControlLattice& coarse,
                              const ControlLattice& fine) {
    if (!coarse.domain.min().isApprox(fine.domain.min(), 0.0) ||
        !coarse.domain.max().isApprox(fine.domain.max(), 0.0))
        fail("domain-mismatch", "coarse and fine lattices must share a domain");

    const Vec3i cd = coarse.dims;
    Points out(fine.num_controls(), 3);
    for (int k = 0; k < fine.dims.z(); ++k)
        for (int j = 0; j < fine.dims.y(); ++j)
            for (int i = 0; i < fine.dims.x(); ++i) {
                // Fine control's coordinate on the coarse index grid.
                const Vec3 q(double(i) / (fine.dims.x() - 1) * (cd.x() - 1),
                             double(j) / (fine.dims.y() - 1) * (cd.y() - 1),
                             double(k) / (fine.dims.z() - 1) * (cd.z() - 1));
                Vec3i c0;
                Vec3 f;
                for (int a = 0; a < 3; ++a) {
                    c0[a] = std::min(int(std::floor(q[a])), cd[a] - 2);
                    f[a] = q[a] - c0[a];
                }
                Eigen::RowVector3d v = Eigen::RowVector3d::Zero();
                for (int dz = 0; dz < 2; ++dz)
                    for (int dy = 0; dy < 2; ++dy)
                        for (int dx = 0; dx < 2; ++dx) {
                            const double w = (dx ? f.x() : 1 - f.x()) *
                                             (dy ? f.y() : 1 - f.y()) *
                                             (dz ? f.z() : 1 - f.z());
                            v += w * coarse.displacements.row(coarse.flat_index(
                                         c0.x() + dx, c0.y() + dy, c0.z() + dz));
                        }
                out.row(fine.flat_index(i, j, k)) = v;
            }
    return out;
}

void save_lattice(const ControlLattice& lattice, const std::filesystem::path& path) {
    nlohmann::json j;
    j["schema"] = 1;
    j["dims"] = {lattice.dims.x(), lattice.dims.y(), lattice.dims.z()};
    j["domain"]["min"] = {lattice.domain.min().x(), lattice.domain.min().y(),
                          lattice.domain.min().z()};
    j["domain"]["max"] = {lattice.domain.max().x(), lattice.domain.max().y(),
                          lattice.domain.max().z()};
    auto& d = j["displacements"] = nlohmann::json::array();
    for (Eigen::Index r = 0; r < lattice.displacements.rows(); ++r)
        d.push_back({lattice.displacements(r, 0), lattice.displacements(r, 1),
                     lattice.displacements(r, 2)});
    std::ofstream out(path);
    if (!out) fail("io-error", "cannot open " + path.string() + " for writing");
    out << j.dump(2) << "\n";
}

ControlLattice load_lattice(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("io-error", "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail("parse-error", path.string() + ": " + e.what());
    }
    try {
        if (j.at("schema").get<int>() != 1)
            fail("bad-config", "unsupported lattice schema in " + path.string());
        const auto dims = j.at("dims");
        const auto dmin = j.at("domain").at("min");
        const auto dmax = j.at("domain").at("max");
        Box3 box(Vec3(dmin.at(0), dmin.at(1), dmin.at(2)),
                 Vec3(dmax.at(0), dmax.at(1), dmax.at(2)));
        ControlLattice lat = build_lattice(
            box, Vec3i(dims.at(0), dims.at(1), dims.at(2)), 0.0);
        const auto& d = j.at("displacements");
        if (Eigen::Index(d.size()) != lat.displacements.rows())
            fail("size-mismatch",
                 path.string() + ": displacement count does not match dims");
        for (Eigen::Index r = 0; r < lat.displacements.rows(); ++r)
            for (int a = 0; a < 3; ++a)
                lat.displacements(r, a) = d.at(r).at(a).get<double>();
        return lat;
    } catch (const nlohmann::json::exception& e) {
        fail("parse-error", path.string() + ": " + e.what());
    }
}

}  // namespace ffd
