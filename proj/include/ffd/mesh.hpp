#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ffd/types.hpp"

namespace ffd {

// Triangle surface mesh with per-triangle structure labels and named face
// tags (inlet/outlet caps). Labels are contiguous integers starting at 0.
struct TemplateMesh {
    Points vertices;                        // N x 3, mm
    Triangles triangles;                    // M x 3, 0-based
    Eigen::VectorXi structure_labels;       // M, one per triangle
    std::vector<std::string> structure_names;
    std::map<std::string, std::set<int>> tags;  // tag name -> triangle indices

    Eigen::Index num_vertices() const { return vertices.rows(); }
    Eigen::Index num_triangles() const { return triangles.rows(); }
    int num_structures() const {
        return structure_labels.size() == 0 ? 0 : structure_labels.maxCoeff() + 1;
    }

    Box3 bounding_box() const;
};

// Time-ordered frames with identical connectivity (vertex correspondence).
struct MeshSequence {
    std::vector<TemplateMesh> frames;
    std::vector<double> frame_times;  // seconds, strictly increasing
};

// Throws invalid-mesh / index-out-of-range / degenerate-triangle on any
// violated TemplateMesh invariant.
void validate(const TemplateMesh& mesh);

// Vertex ids referenced by triangles of each structure label, sorted unique.
std::vector<std::vector<int>> structure_vertex_indices(const TemplateMesh& mesh);

// Per-structure vertex positions (the point sets P_i / G_i).
std::vector<Points> structure_point_sets(const TemplateMesh& mesh);

// Undirected edges not shared by exactly two triangles; empty iff watertight.
std::vector<std::pair<int, int>> boundary_edges(const TemplateMesh& mesh);
bool is_watertight(const TemplateMesh& mesh);

// True when connectivity (triangles, labels, vertex count) matches.
bool same_connectivity(const TemplateMesh& a, const TemplateMesh& b);

}  // namespace ffd
