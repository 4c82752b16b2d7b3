#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gom {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Jac3x9 = Eigen::Matrix<double, 3, 9>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace gom
