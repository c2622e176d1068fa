#pragma once

#include <array>
#include <string>

#include "inertid/spatial.hpp"

namespace inertid {

/// Axis-aligned bounding ellipsoid of a link, in the link frame.
/// Shape matrix Q_s = diag(semi_axes^2).
struct EllipsoidBound {
  Vec3 center = Vec3::Zero();
  Vec3 semi_axes = Vec3::Ones();

  Mat3 shape() const { return semi_axes.array().square().matrix().asDiagonal(); }
  Mat3 shape_inverse() const {
    return semi_axes.array().square().inverse().matrix().asDiagonal();
  }
  bool valid() const { return (semi_axes.array() > 0.0).all(); }
};

/// The 10 inertial parameters of one rigid body, ordered
/// [m, h_x, h_y, h_z, i_xx, i_xy, i_xz, i_yy, i_yz, i_zz].
/// h = m*c is the first moment; the i_** are the rotational inertia about
/// the link frame origin, in the link frame.
struct InertialParams {
  Vec10 v = Vec10::Zero();

  InertialParams() = default;
  explicit InertialParams(const Vec10& vec) : v(vec) {}
  InertialParams(double m, const Vec3& h, const Mat3& I) {
    v(0) = m;
    v.segment<3>(1) = h;
    v(4) = I(0, 0);
    v(5) = I(0, 1);
    v(6) = I(0, 2);
    v(7) = I(1, 1);
    v(8) = I(1, 2);
    v(9) = I(2, 2);
  }

  double mass() const { return v(0); }
  Vec3 first_moment() const { return v.segment<3>(1); }
  Vec3 com() const { return v.segment<3>(1) / v(0); }

  Mat3 inertia() const {
    Mat3 I;
    I << v(4), v(5), v(6), v(5), v(7), v(8), v(6), v(8), v(9);
    return I;
  }

  SpatialInertia spatial() const { return SpatialInertia{v(0), first_moment(), inertia()}; }

  /// Parameters of a body whose mass distribution is that of `params` seen
  /// from a frame displaced by X (X = pose of the new frame in the old one is
  /// not needed here; this helper builds params for common primitives instead).
  static InertialParams point_mass(double m, const Vec3& c) {
    Mat3 I = m * (c.squaredNorm() * Mat3::Identity() - c * c.transpose());
    return InertialParams(m, m * c, I);
  }

  /// Uniform solid ellipsoid with the given semi axes, centered at c.
  static InertialParams solid_ellipsoid(double m, const Vec3& c, const Vec3& semi_axes) {
    const Vec3 s2 = semi_axes.array().square();
    Mat3 Ic = Mat3::Zero();
    Ic(0, 0) = m / 5.0 * (s2.y() + s2.z());
    Ic(1, 1) = m / 5.0 * (s2.x() + s2.z());
    Ic(2, 2) = m / 5.0 * (s2.x() + s2.y());
    Mat3 I = Ic + m * (c.squaredNorm() * Mat3::Identity() - c * c.transpose());
    return InertialParams(m, m * c, I);
  }

  /// Uniform solid box with full side lengths `dims`, centered at c.
  static InertialParams solid_box(double m, const Vec3& c, const Vec3& dims) {
    const Vec3 d2 = dims.array().square();
    Mat3 Ic = Mat3::Zero();
    Ic(0, 0) = m / 12.0 * (d2.y() + d2.z());
    Ic(1, 1) = m / 12.0 * (d2.x() + d2.z());
    Ic(2, 2) = m / 12.0 * (d2.x() + d2.y());
    Mat3 I = Ic + m * (c.squaredNorm() * Mat3::Identity() - c * c.transpose());
    return InertialParams(m, m * c, I);
  }
};

/// Pseudo-inertia J(phi) = [[K, h], [h^T, m]] with K = tr(I)/2 * 1 - I.
Mat4 pseudo_inertia(const InertialParams& p);

/// Inverse of pseudo_inertia: recovers phi from a symmetric 4x4 J.
InertialParams params_from_pseudo_inertia(const Mat4& J);

/// The ten constant matrices d J / d phi_a (pseudo_inertia is linear in phi).
const std::array<Mat4, 10>& pseudo_inertia_basis();

/// Schur-complement form of the CoM-in-ellipsoid condition:
/// C = [[m, (h - m*xc)^T], [h - m*xc, m*Qs]]. C >= 0 iff the CoM lies in the
/// ellipsoid (for m > 0).
Mat4 com_lmi(const InertialParams& p, const EllipsoidBound& e);

/// Quadric matrix of the bounding ellipsoid,
/// Q_j = [[-Qs^-1, Qs^-1 xc], [(Qs^-1 xc)^T, 1 - xc^T Qs^-1 xc]].
Mat4 qj_matrix(const EllipsoidBound& e);

/// Density-realizability value tr(J(phi) * Q_j); >= 0 required.
double density_realizability(const InertialParams& p, const EllipsoidBound& e);

/// Gradient of density_realizability w.r.t. phi (it is linear in phi).
Vec10 density_realizability_gradient(const EllipsoidBound& e);

struct ConsistencyReport {
  bool fully_consistent = false;
  bool pseudo_inertia_pd = false;   // min_eig(J) > eps
  bool com_in_ellipsoid = false;    // min_eig(C) >= -eps_feas
  bool density_realizable = false;  // trace >= -eps_feas
  double min_eig_pseudo_inertia = 0.0;
  double min_eig_com = 0.0;
  double trace_realizability = 0.0;
  double eps = 0.0;
  double eps_feas = 0.0;

  std::string describe() const;
};

/// Full physical-consistency check: J(phi) > eps*1, C(phi) >= -eps_feas,
/// tr(J*Qj) >= -eps_feas. Margins are always reported.
ConsistencyReport is_fully_consistent(const InertialParams& p, const EllipsoidBound& e,
                                      double eps = 1e-6, double eps_feas = 1e-9);

}  // namespace inertid
