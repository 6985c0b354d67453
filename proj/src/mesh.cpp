#include "ffd/mesh.hpp"

#include <algorithm>
#include <map>

#include "ffd/errors.hpp"

namespace ffd {

Box3 TemplateMesh::bounding_box() const {
    if (vertices.rows() == 0) fail("invalid-mesh", "mesh has no vertices");
    Box3 box;
    box.min() = vertices.colwise().minCoeff().transpose();
    box.max() = vertices.colwise().maxCoeff().transpose();
    return box;
}

void validate(const TemplateMesh& mesh) {
    const Eigen::Index nv = mesh.num_vertices();
    const Eigen::Index nt = mesh.num_triangles();
    if (mesh.structure_labels.size() != nt)
        fail("invalid-mesh", "label count does not match triangle count");

    for (Eigen::Index t = 0; t < nt; ++t) {
        const auto tri = mesh.triangles.row(t);
        for (int c = 0; c < 3; ++c)
            if (tri[c] < 0 || tri[c] >= nv)
                fail("index-out-of-range",
                     "triangle " + std::to_string(t) + " references vertex " +
                         std::to_string(tri[c]) + " of " + std::to_string(nv));
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            fail("degenerate-triangle",
                 "triangle " + std::to_string(t) + " has repeated vertices");
    }

    if (nt > 0) {
        std::set<int> labels(mesh.structure_labels.begin(), mesh.structure_labels.end());
        if (*labels.begin() != 0 || *labels.rbegin() != int(labels.size()) - 1)
            fail("invalid-mesh", "structure labels must be contiguous from 0");
    }

    for (const auto& [name, tris] : mesh.tags)
        for (int t : tris)
            if (t < 0 || t >= nt)
                fail("index-out-of-range", "tag '" + name + "' references triangle " +
                                               std::to_string(t) + " of " +
                                               std::to_string(nt));
}

std::vector<std::vector<int>> structure_vertex_indices(const TemplateMesh& mesh) {
    std::vector<std::set<int>> sets(mesh.num_structures());
    for (Eigen::Index t = 0; t < mesh.num_triangles(); ++t) {
        auto& s = sets[mesh.structure_labels[t]];
        for (int c = 0; c < 3; ++c) s.insert(mesh.triangles(t, c));
    }
    std::vector<std::vector<int>> out(sets.size());
    for (size_t i = 0; i < sets.size(); ++i)
        out[i].assign(sets[i].begin(), sets[i].end());
    return out;
}

std::vector<Points> structure_point_sets(const TemplateMesh& mesh) {
    const auto indices = structure_vertex_indices(mesh);
    std::vector<Points> out(indices.size());
    for (size_t s = 0; s < indices.size(); ++s) {
        out[s].resize(Eigen::Index(indices[s].size()), 3);
        for (size_t r = 0; r < indices[s].size(); ++r)
            out[s].row(Eigen::Index(r)) = mesh.vertices.row(indices[s][r]);
    }
    return out;
}

std::vector<std::pair<int, int>> boundary_edges(const TemplateMesh& mesh) {
    std::map<std::pair<int, int>, int> count;
    for (Eigen::Index t = 0; t < mesh.num_triangles(); ++t)
        for (int c = 0; c < 3; ++c) {
            int a = mesh.triangles(t, c), b = mesh.triangles(t, (c + 1) % 3);
            if (a > b) std::swap(a, b);
            ++count[{a, b}];
        }
    std::vector<std::pair<int, int>> bad;
    for (const auto& [edge, n] : count)
        if (n != 2) bad.push_back(edge);
    return bad;
}

bool is_watertight(const TemplateMesh& mesh) {
    return mesh.num_triangles() > 0 && boundary_edges(mesh).empty();
}

bool same_connectivity(const TemplateMesh& a, const TemplateMesh& b) {
    return a.num_vertices() == b.num_vertices() && a.triangles == b.triangles &&
           a.structure_labels == b.structure_labels;
}

}  // namespace ffd
