#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/SparseCore>

namespace ffd {

template <class Scalar>
using PointsT = Eigen::Matrix<Scalar, Eigen::Dynamic, 3, Eigen::RowMajor>;

using Points = PointsT<double>;                                       // rows are xyz, mm
using Triangles = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;
using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Box3 = Eigen::AlignedBox3d;

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

template <class T>
using CRef = Eigen::Ref<const T>;

}  // namespace ffd
