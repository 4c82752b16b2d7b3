#pragma once

#include "gom/common.hpp"

namespace gom {

// 9-DoF pose with per-axis scale: translation t, axis-angle rotation phi,
// scale s. Composes to a 4x4 matrix mapping object frame -> world frame.
struct PoseVec9 {
  Vec3 t = Vec3::Zero();
  Vec3 phi = Vec3::Zero();
  Vec3 s = Vec3::Ones();

  static PoseVec9 identity() { return PoseVec9{}; }

  Vec9 to_vector() const {
    Vec9 v;
    v << t, phi, s;
    return v;
  }
  static PoseVec9 from_vector(const Vec9& v) {
    return PoseVec9{v.segment<3>(0), v.segment<3>(3), v.segment<3>(6)};
  }
};

// Homogeneous transform whose upper-left block is R * diag(s).
struct PoseMatrix {
  Mat4 m = Mat4::Identity();
};

// Pinhole camera. t_wc maps camera frame -> world frame (unit scale);
// camera looks along +z, x right, y down. Pixel (u, v) samples the ray
// through ((u - cx)/fx, (v - cy)/fy, 1).
struct CameraModel {
  double fx = 1.0, fy = 1.0, cx = 0.0, cy = 0.0;
  int width = 0, height = 0;
  PoseMatrix t_wc;
};

Mat3 skew(const Vec3& v);

// Rodrigues formula, series expansion below |phi| = 1e-8.
Mat3 exp_so3(const Vec3& phi);

// Inverse of exp_so3; result has |phi| <= pi. Throws NotARotation when the
// input is not orthonormal within 1e-6 or has negative determinant.
Vec3 log_so3(const Mat3& r);

// Right Jacobian of SO(3): exp((phi + d)^) ~ exp(phi^) exp((Jr(phi) d)^).
Mat3 so3_right_jacobian(const Vec3& phi);

// T = [exp(phi^) t; 0 1] * [diag(s) 0; 0 1]. Throws NonPositiveScale.
PoseMatrix compose_pose(const PoseVec9& xi);

// Inverse of compose_pose. Throws DegenerateScale when a column norm falls
// below 1e-12 and NotARotation for reflections.
PoseVec9 decompose_pose(const PoseMatrix& t);

PoseMatrix inverse_pose(const PoseMatrix& t);

Vec3 transform_point(const PoseMatrix& t, const Vec3& x);

// d(R(phi) diag(s) x + t) / d[t, phi, s], a 3x9 matrix. The phi block is the
// derivative with respect to the axis-angle coordinates themselves.
Jac3x9 pose_point_jacobian(const PoseVec9& xi, const Vec3& x);

}  // namespace gom
