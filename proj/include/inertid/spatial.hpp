#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

// Spatial (6D) rigid-body algebra. Conventions used throughout:
//   - 6D motion vectors are [linear; angular], expressed in a named frame,
//     taken at that frame's origin.
//   - 6D force vectors are [force; torque], about the frame origin.
//   - SE3{R, p} is the pose of a child frame in parent coordinates:
//     x_parent = R * x_child + p.

namespace inertid {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Quat = Eigen::Quaterniond;

inline Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return s;
}

/// Rigid transform: pose of a child frame expressed in its parent frame.
struct SE3 {
  Mat3 R = Mat3::Identity();
  Vec3 p = Vec3::Zero();

  static SE3 Identity() { return SE3{}; }

  SE3 operator*(const SE3& other) const {
    return SE3{R * other.R, R * other.p + p};
  }

  SE3 inverse() const { return SE3{R.transpose(), -(R.transpose() * p)}; }

  Vec3 act(const Vec3& x) const { return R * x + p; }

  Eigen::Matrix4d homogeneous() const {
    Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
    T.topLeftCorner<3, 3>() = R;
    T.topRightCorner<3, 1>() = p;
    return T;
  }
};

/// Rotation about a unit axis by angle (Rodrigues).
inline Mat3 axis_angle(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

/// Roll-pitch-yaw (extrinsic x-y-z, i.e. R = Rz(y)*Ry(p)*Rx(r)).
inline Mat3 rpy_to_rotation(double r, double p, double y) {
  return (Eigen::AngleAxisd(y, Vec3::UnitZ()) *
          Eigen::AngleAxisd(p, Vec3::UnitY()) *
          Eigen::AngleAxisd(r, Vec3::UnitX()))
      .toRotationMatrix();
}

inline Mat3 exp_so3(const Vec3& w) {
  const double theta = w.norm();
  if (theta < 1e-12) return Mat3::Identity() + skew(w);
  return Eigen::AngleAxisd(theta, w / theta).toRotationMatrix();
}

/// Re-express a motion vector given in frame b (at b's origin) in frame a,
/// at a's origin. X_ab is the pose of b in a.
inline Vec6 transform_motion(const SE3& X_ab, const Vec6& m_b) {
  Vec6 out;
  const Vec3 w = X_ab.R * m_b.tail<3>();
  out.tail<3>() = w;
  out.head<3>() = X_ab.R * m_b.head<3>() + X_ab.p.cross(w);
  return out;
}

/// Re-express a force vector given in frame b (about b's origin) in frame a,
/// about a's origin. X_ab is the pose of b in a.
inline Vec6 transform_force(const SE3& X_ab, const Vec6& f_b) {
  Vec6 out;
  const Vec3 f = X_ab.R * f_b.head<3>();
  out.head<3>() = f;
  out.tail<3>() = X_ab.R * f_b.tail<3>() + X_ab.p.cross(f);
  return out;
}

/// Motion-on-motion cross product (Lie bracket for twists).
inline Vec6 cross_motion(const Vec6& a, const Vec6& b) {
  Vec6 out;
  out.head<3>() = a.tail<3>().cross(b.head<3>()) + a.head<3>().cross(b.tail<3>());
  out.tail<3>() = a.tail<3>().cross(b.tail<3>());
  return out;
}

/// Motion-on-force cross product (dual of cross_motion).
inline Vec6 cross_force(const Vec6& m, const Vec6& f) {
  Vec6 out;
  out.head<3>() = m.tail<3>().cross(f.head<3>());
  out.tail<3>() = m.tail<3>().cross(f.tail<3>()) + m.head<3>().cross(f.head<3>());
  return out;
}

/// Spatial inertia of one rigid body, expressed at the body frame origin:
/// mass m, first moment h = m*c, rotational inertia I about the origin.
struct SpatialInertia {
  double m = 0.0;
  Vec3 h = Vec3::Zero();
  Mat3 I = Mat3::Zero();

  /// Momentum [linear; angular] produced by a twist [v; w].
  Vec6 apply(const Vec6& twist) const {
    const Vec3 v = twist.head<3>();
    const Vec3 w = twist.tail<3>();
    Vec6 out;
    out.head<3>() = m * v + w.cross(h);
    out.tail<3>() = h.cross(v) + I * w;
    return out;
  }

  Mat6 matrix() const {
    Mat6 M;
    M.topLeftCorner<3, 3>() = m * Mat3::Identity();
    M.topRightCorner<3, 3>() = -skew(h);
    M.bottomLeftCorner<3, 3>() = skew(h);
    M.bottomRightCorner<3, 3>() = I;
    return M;
  }
};

}  // namespace inertid
