#include "ffd/deformation.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

#include "ffd/errors.hpp"

namespace ffd {

DeformationTensor assemble_tensor(const CRef<Points>& points,
                                  const ControlLattice& lattice) {
    const Eigen::Index n = points.rows();
    const int psi = lattice.num_controls();

    DeformationTensor tensor;
    tensor.local_coords.resize(n, 3);
    tensor.weights.resize(n, psi);
    tensor.weights.reserve(Eigen::VectorXi::Constant(int(n), 64));

    for (Eigen::Index r = 0; r < n; ++r) {
        const Vec3 p = points.row(r).transpose();
        if (!lattice.domain.contains(p))
            fail("point-outside-domain",
                 "point " + std::to_string(r) + " lies outside the lattice domain");
        const Vec3 stu = lattice.normalize(p);
        tensor.local_coords.row(r) = stu.transpose();

        std::array<BasisSpan, 3> basis;
        for (int a = 0; a < 3; ++a) basis[a] = eval_basis(stu[a], lattice.knots[a]);

        // Iterating k, j, i yields strictly increasing flat column indices,
        // so insertion order is already canonical.
        for (int dk = 0; dk < 4; ++dk) {
            const int k = basis[2].span - 3 + dk;
            const double wk = basis[2].weights[dk];
            for (int dj = 0; dj < 4; ++dj) {
                const int j = basis[1].span - 3 + dj;
                const double wjk = basis[1].weights[dj] * wk;
                for (int di = 0; di < 4; ++di) {
                    const int i = basis[0].span - 3 + di;
                    tensor.weights.insert(r, lattice.flat_index(i, j, k)) =
                        basis[0].weights[di] * wjk;
                }
            }
        }
    }
    tensor.weights.makeCompressed();
    return tensor;
}

Points apply_ffd(const DeformationTensor& tensor, const ControlLattice& lattice,
                 const CRef<Points>& points) {
    if (tensor.cols() != lattice.num_controls())
        fail("dimension-mismatch", "tensor has " + std::to_string(tensor.cols()) +
                                       " columns but lattice has " +
                                       std::to_string(lattice.num_controls()) +
                                       " controls");
    if (tensor.rows() != points.rows())
        fail("dimension-mismatch", "tensor rows do not match point count");
    return points + tensor.weights * lattice.displacements;
}

namespace {

template <class T>
void write_raw(std::ofstream& out, const T* data, size_t count) {
    out.write(reinterpret_cast<const char*>(data),
              std::streamsize(count * sizeof(T)));
}

template <class T>
void read_raw(std::ifstream& in, T* data, size_t count) {
    in.read(reinterpret_cast<char*>(data), std::streamsize(count * sizeof(T)));
    if (!in) fail("size-mismatch", "tensor file truncated");
}

}  // namespace

void save_tensor(const DeformationTensor& tensor, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("io-error", "cannot open " + path.string() + " for writing");

    const auto& w = tensor.weights;
    const int64_t rows = w.rows(), cols = w.cols(), nnz = w.nonZeros();
    write_raw(out, &rows, 1);
    write_raw(out, &cols, 1);
    write_raw(out, &nnz, 1);

    std::vector<int64_t> offsets(size_t(rows) + 1);
    for (int64_t r = 0; r <= rows; ++r) offsets[size_t(r)] = w.outerIndexPtr()[r];
    write_raw(out, offsets.data(), offsets.size());

    std::vector<int64_t> cols_idx(size_t(nnz));
    for (int64_t i = 0; i < nnz; ++i) cols_idx[size_t(i)] = w.innerIndexPtr()[i];
    write_raw(out, cols_idx.data(), cols_idx.size());
    write_raw(out, w.valuePtr(), size_t(nnz));
    if (!out) fail("io-error", "failed writing " + path.string());
}

DeformationTensor load_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("io-error", "cannot open " + path.string());

    int64_t rows = 0, cols = 0, nnz = 0;
    read_raw(in, &rows, 1);
    read_raw(in, &cols, 1);
    read_raw(in, &nnz, 1);
    if (rows < 0 || cols < 0 || nnz < 0)
        fail("parse-error", path.string() + ": negative header field");

    std::vector<int64_t> offsets(size_t(rows) + 1);
    read_raw(in, offsets.data(), offsets.size());
    std::vector<int64_t> cols_idx(size_t(nnz));
    read_raw(in, cols_idx.data(), cols_idx.size());
    std::vector<double> values(size_t(nnz));
    read_raw(in, values.data(), values.size());

    if (offsets[0] != 0 || offsets[size_t(rows)] != nnz)
        fail("parse-error", path.string() + ": inconsistent CSR offsets");

    DeformationTensor tensor;
    tensor.weights.resize(rows, cols);
    tensor.weights.reserve(Eigen::VectorXi::Constant(int(rows), 64));
    for (int64_t r = 0; r < rows; ++r) {
        if (offsets[size_t(r)] > offsets[size_t(r) + 1])
            fail("parse-error", path.string() + ": decreasing CSR offsets");
        for (int64_t e = offsets[size_t(r)]; e < offsets[size_t(r) + 1]; ++e) {
            const int64_t c = cols_idx[size_t(e)];
            if (c < 0 || c >= cols)
                fail("parse-error", path.string() + ": column index out of range");
            tensor.weights.insert(r, c) = values[size_t(e)];
        }
    }
    tensor.weights.makeCompressed();
    tensor.local_coords = Points::Zero(rows, 3);
    return tensor;
}

}  // namespace ffd
