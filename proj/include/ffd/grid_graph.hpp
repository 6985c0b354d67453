#pragma once

#include "ffd/types.hpp"

namespace ffd {

// Control-grid graph: nodes are control points, edges connect all
// 26-neighbors (Chebyshev distance 1 in index space).
struct GridGraph {
    Vec3i dims;
    SparseRowMatrix adjacency;  // 0/1, symmetric, zero diagonal
    Eigen::VectorXi degree;
    double lambda_max = 2.0;    // upper bound for normalized Laplacians

    int num_nodes() const { return dims.x() * dims.y() * dims.z(); }
};

GridGraph build_grid_graph(const Vec3i& dims);

// L_norm = I - D^{-1/2} A D^{-1/2}.
SparseRowMatrix normalized_laplacian(const GridGraph& graph);

// L~ = 2 L_norm / lambda_max - I, using the graph's lambda_max.
SparseRowMatrix scaled_laplacian(const GridGraph& graph);

// Largest eigenvalue of L_norm by power iteration.
double estimate_lambda_max(const GridGraph& graph, double tol = 1e-8,
                           int max_iterations = 10000);

enum class Activation { Identity, Relu };

// First-order Chebyshev graph filter: f_out = sigma(theta0 f_in + theta1 f_in L~).
// Features are laid out features-by-nodes.
struct ChebyshevFilter {
    Eigen::MatrixXd theta0;  // d_out x d_in
    Eigen::MatrixXd theta1;  // d_out x d_in
    Activation activation = Activation::Identity;
};

Eigen::MatrixXd chebyshev_filter(const ChebyshevFilter& filter,
                                 const CRef<Eigen::MatrixXd>& f_in,
                                 const SparseRowMatrix& scaled_laplacian);

struct ChebyshevGradients {
    Eigen::MatrixXd theta0;  // dL/dtheta0
    Eigen::MatrixXd theta1;  // dL/dtheta1
    Eigen::MatrixXd f_in;    // dL/df_in
};

// Backward pass for a scalar functional with upstream gradient dL/df_out.
ChebyshevGradients chebyshev_filter_backward(const ChebyshevFilter& filter,
                                             const CRef<Eigen::MatrixXd>& f_in,
                                             const SparseRowMatrix& scaled_laplacian,
                                             const CRef<Eigen::MatrixXd>& dloss_dfout);

}  // namespace ffd
