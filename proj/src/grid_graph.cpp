#include "ffd/grid_graph.hpp"

#include <vector>

#include "ffd/errors.hpp"
#include "ffd/rng.hpp"

namespace ffd {

GridGraph build_grid_graph(const Vec3i& dims) {
    if ((dims.array() < 2).any())
        fail("bad-dims", "grid graph needs at least 2 nodes per axis");

    GridGraph g;
    g.dims = dims;
    const int n = g.num_nodes();
    auto flat = [&](int i, int j, int k) { return i + dims.x() * (j + dims.y() * k); };

    g.adjacency.resize(n, n);
    g.adjacency.reserve(Eigen::VectorXi::Constant(n, 26));
    g.degree = Eigen::VectorXi::Zero(n);
    for (int k = 0; k < dims.z(); ++k)
        for (int j = 0; j < dims.y(); ++j)
            for (int i = 0; i < dims.x(); ++i) {
                const int row = flat(i, j, k);
                for (int dk = -1; dk <= 1; ++dk)
                    for (int dj = -1; dj <= 1; ++dj)
                        for (int di = -1; di <= 1; ++di) {
                            if (di == 0 && dj == 0 && dk == 0) continue;
                            const int ii = i + di, jj = j + dj, kk = k + dk;
                            if (ii < 0 || jj < 0 || kk < 0 || ii >= dims.x() ||
                                jj >= dims.y() || kk >= dims.z())
                                continue;
                            g.adjacency.insert(row, flat(ii, jj, kk)) = 1.0;
                            ++g.degree[row];
                        }
            }
    g.adjacency.makeCompressed();
    return g;
}

namespace {

Eigen::VectorXd inv_sqrt_degree(const GridGraph& graph) {
    Eigen::VectorXd d(graph.degree.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (graph.degree[i] == 0)
            fail("isolated-node", "node " + std::to_string(i) + " has degree 0");
        d[i] = 1.0 / std::sqrt(double(graph.degree[i]));
    }
    return d;
}

}  // namespace

SparseRowMatrix normalized_laplacian(const GridGraph& graph) {
    const Eigen::VectorXd dinv = inv_sqrt_degree(graph);
    const int n = graph.num_nodes();
    SparseRowMatrix lap(n, n);
    lap.reserve(Eigen::VectorXi::Constant(n, 27));
    for (int r = 0; r < n; ++r) {
        bool diag_done = false;
        for (SparseRowMatrix::InnerIterator it(graph.adjacency, r); it; ++it) {
            if (!diag_done && it.col() > r) {
                lap.insert(r, r) = 1.0;
                diag_done = true;
            }
            lap.insert(r, it.col()) = -dinv[r] * it.value() * dinv[it.col()];
        }
        if (!diag_done) lap.insert(r, r) = 1.0;
    }
    lap.makeCompressed();
    return lap;
}

SparseRowMatrix scaled_laplacian(const GridGraph& graph) {
    SparseRowMatrix lnorm = normalized_laplacian(graph);
    SparseRowMatrix identity(graph.num_nodes(), graph.num_nodes());
    identity.setIdentity();
    SparseRowMatrix scaled = (2.0 / graph.lambda_max) * lnorm - identity;
    scaled.makeCompressed();
    return scaled;
}

double estimate_lambda_max(const GridGraph& graph, double tol, int max_iterations) {
    const SparseRowMatrix lnorm = normalized_laplacian(graph);
    const int n = graph.num_nodes();

    SplitMix64 rng(0x1a77a2c3u);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.next_double() - 0.5;
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd w = lnorm * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        w /= norm;
        const double next = w.dot(lnorm * w);
        const bool converged = std::abs(next - lambda) < tol;
        lambda = next;
        v = std::move(w);
        if (converged) break;
    }
    return lambda;
}

Eigen::MatrixXd chebyshev_filter(const ChebyshevFilter& filter,
                                 const CRef<Eigen::MatrixXd>& f_in,
                                 const SparseRowMatrix& scaled_laplacian) {
    if (filter.theta0.rows() != filter.theta1.rows() ||
        filter.theta0.cols() != filter.theta1.cols())
        fail("shape-mismatch", "theta0 and theta1 must have identical shapes");
    if (filter.theta0.cols() != f_in.rows())
        fail("shape-mismatch", "theta columns must match feature dimension");
    if (f_in.cols() != scaled_laplacian.rows())
        fail("shape-mismatch", "feature columns must match node count");

    Eigen::MatrixXd pre = filter.theta0 * f_in +
                          filter.theta1 * (f_in * scaled_laplacian);
    if (filter.activation == Activation::Relu)
        pre = pre.cwiseMax(0.0);
    return pre;
}

ChebyshevGradients chebyshev_filter_backward(const ChebyshevFilter& filter,
                                             const CRef<Eigen::MatrixXd>& f_in,
                                             const SparseRowMatrix& scaled_laplacian,
                                             const CRef<Eigen::MatrixXd>& dloss_dfout) {
    Eigen::MatrixXd diffused = f_in * scaled_laplacian;
    Eigen::MatrixXd g = dloss_dfout;
    if (filter.activation == Activation::Relu) {
        const Eigen::MatrixXd pre =
            filter.theta0 * f_in + filter.theta1 * diffused;
        g = ((pre.array() > 0.0).cast<double>() * g.array()).matrix();
    }

    ChebyshevGradients grads;
    grads.theta0 = g * f_in.transpose();
    grads.theta1 = g * diffused.transpose();
    // L~ is symmetric, so d/df_in of (f_in L~) contracts with L~ again.
    grads.f_in = filter.theta0.transpose() * g +
                 (filter.theta1.transpose() * g) * scaled_laplacian;
    return grads;
}

}  // namespace ffd
