#include "ffd/shapes.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace ffd {

namespace {

TemplateMesh from_lists(const std::vector<Vec3>& vertices,
                        const std::vector<std::array<int, 3>>& triangles) {
    TemplateMesh mesh;
    mesh.vertices.resize(Eigen::Index(vertices.size()), 3);
    for (size_t i = 0; i < vertices.size(); ++i)
        mesh.vertices.row(Eigen::Index(i)) = vertices[i].transpose();
    mesh.triangles.resize(Eigen::Index(triangles.size()), 3);
    for (size_t t = 0; t < triangles.size(); ++t)
        for (int c = 0; c < 3; ++c) mesh.triangles(Eigen::Index(t), c) = triangles[t][c];
    mesh.structure_labels = Eigen::VectorXi::Zero(Eigen::Index(triangles.size()));
    mesh.structure_names = {"structure_0"};
    return mesh;
}

}  // namespace

TemplateMesh make_icosphere(int subdivisions, double radius, const Vec3& center) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> tris = {
        {0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            verts.push_back((verts[size_t(a)] + verts[size_t(b)]).normalized());
            const int idx = int(verts.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(tris.size() * 4);
        for (const auto& t : tris) {
            const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }

    TemplateMesh mesh = from_lists(verts, tris);
    mesh.vertices = (mesh.vertices * radius).rowwise() + center.transpose();
    return mesh;
}

TemplateMesh make_ellipsoid(int subdivisions, const Vec3& semi_axes, const Vec3& center) {
    TemplateMesh mesh = make_icosphere(subdivisions, 1.0);
    mesh.vertices = mesh.vertices.array().rowwise() * semi_axes.transpose().array();
    mesh.vertices.rowwise() += center.transpose();
    return mesh;
}

TemplateMesh make_box(const Vec3& lo, const Vec3& hi) {
    const std::vector<Vec3> verts = {
        {lo.x(), lo.y(), lo.z()}, {hi.x(), lo.y(), lo.z()},
        {hi.x(), hi.y(), lo.z()}, {lo.x(), hi.y(), lo.z()},
        {lo.x(), lo.y(), hi.z()}, {hi.x(), lo.y(), hi.z()},
        {hi.x(), hi.y(), hi.z()}, {lo.x(), hi.y(), hi.z()}};
    const std::vector<std::array<int, 3>> tris = {
        {0, 2, 1}, {0, 3, 2},   // z = lo
        {4, 5, 6}, {4, 6, 7},   // z = hi
        {0, 1, 5}, {0, 5, 4},   // y = lo
        {3, 7, 6}, {3, 6, 2},   // y = hi
        {0, 4, 7}, {0, 7, 3},   // x = lo
        {1, 2, 6}, {1, 6, 5}};  // x = hi
    return from_lists(verts, tris);
}

TemplateMesh make_torus(double major_radius, double minor_radius,
                        int major_segments, int minor_segments) {
    std::vector<Vec3> verts;
    verts.reserve(size_t(major_segments) * size_t(minor_segments));
    for (int i = 0; i < major_segments; ++i) {
        const double u = 2.0 * M_PI * i / major_segments;
        for (int j = 0; j < minor_segments; ++j) {
            const double v = 2.0 * M_PI * j / minor_segments;
            const double ring = major_radius + minor_radius * std::cos(v);
            verts.push_back(
                {ring * std::cos(u), ring * std::sin(u), minor_radius * std::sin(v)});
        }
    }
    std::vector<std::array<int, 3>> tris;
    auto at = [&](int i, int j) {
        return (i % major_segments) * minor_segments + (j % minor_segments);
    };
    for (int i = 0; i < major_segments; ++i)
        for (int j = 0; j < minor_segments; ++j) {
            tris.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            tris.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    return from_lists(verts, tris);
}

}  // namespace ffd
