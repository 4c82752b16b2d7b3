#include "gom/lie_pose.hpp"

#include <cmath>

#include "gom/errors.hpp"

namespace gom {

Mat3 skew(const Vec3& v) {
  Mat3 s;
  // clang-format off
  s <<     0, -v.z(),  v.y(),
       v.z(),      0, -v.x(),
      -v.y(),  v.x(),      0;
  // clang-format on
  return s;
}

Mat3 exp_so3(const Vec3& phi) {
  const double theta2 = phi.squaredNorm();
  const Mat3 k = skew(phi);
  if (theta2 < 1e-16) {
    return Mat3::Identity() + k + 0.5 * k * k;
  }
  const double theta = std::sqrt(theta2);
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / theta2;
  return Mat3::Identity() + a * k + b * k * k;
}

Vec3 log_so3(const Mat3& r) {
  if ((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
      r.determinant() < 0.0) {
    throw NotARotation("log_so3: input is not a rotation matrix");
  }
  Eigen::AngleAxisd aa(r);
  return aa.angle() * aa.axis();
}

Mat3 so3_right_jacobian(const Vec3& phi) {
  const double theta2 = phi.squaredNorm();
  const Mat3 k = skew(phi);
  double c1, c2;
  if (theta2 < 1e-10) {
    c1 = 0.5 - theta2 / 24.0;
    c2 = 1.0 / 6.0 - theta2 / 120.0;
  } else {
    const double theta = std::sqrt(theta2);
    c1 = (1.0 - std::cos(theta)) / theta2;
    c2 = (theta - std::sin(theta)) / (theta2 * theta);
  }
  return Mat3::Identity() - c1 * k + c2 * k * k;
}

PoseMatrix compose_pose(const PoseVec9& xi) {
  if (!(xi.s.minCoeff() > 0.0)) {
    throw NonPositiveScale("compose_pose: scale components must be positive");
  }
  PoseMatrix out;
  out.m.setIdentity();
  out.m.topLeftCorner<3, 3>() = exp_so3(xi.phi) * xi.s.asDiagonal();
  out.m.topRightCorner<3, 1>() = xi.t;
  return out;
}

PoseVec9 decompose_pose(const PoseMatrix& t) {
  const Mat3 m = t.m.topLeftCorner<3, 3>();
  Vec3 s;
  for (int j = 0; j < 3; ++j) {
    s[j] = m.col(j).norm();
    if (s[j] < 1e-12) {
      throw DegenerateScale("decompose_pose: near-zero column norm");
    }
  }
  Mat3 r = m * s.cwiseInverse().asDiagonal();
  PoseVec9 xi;
  xi.phi = log_so3(r);  // validates orthonormality and determinant
  xi.t = t.m.topRightCorner<3, 1>();
  xi.s = s;
  return xi;
}

PoseMatrix inverse_pose(const PoseMatrix& t) {
  const PoseVec9 xi = decompose_pose(t);
  const Mat3 r = exp_so3(xi.phi);
  PoseMatrix out;
  out.m.setIdentity();
  out.m.topLeftCorner<3, 3>() = xi.s.cwiseInverse().asDiagonal() * r.transpose();
  out.m.topRightCorner<3, 1>() =
      -(xi.s.cwiseInverse().asDiagonal() * (r.transpose() * xi.t));
  return out;
}

Vec3 transform_point(const PoseMatrix& t, const Vec3& x) {
  return t.m.topLeftCorner<3, 3>() * x + t.m.topRightCorner<3, 1>();
}

Jac3x9 pose_point_jacobian(const PoseVec9& xi, const Vec3& x) {
  const Mat3 r = exp_so3(xi.phi);
  const Vec3 sx = xi.s.cwiseProduct(x);
  Jac3x9 j;
  j.block<3, 3>(0, 0) = Mat3::Identity();
  j.block<3, 3>(0, 3) = -r * skew(sx) * so3_right_jacobian(xi.phi);
  j.block<3, 3>(0, 6) = r * x.asDiagonal();
  return j;
}

}  // namespace gom
