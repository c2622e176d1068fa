#include "inertid/consistency.hpp"

#include <sstream>

namespace inertid {

Mat4 pseudo_inertia(const InertialParams& p) {
  const Mat3 I = p.inertia();
  const Mat3 K = 0.5 * I.trace() * Mat3::Identity() - I;
  Mat4 J;
  J.topLeftCorner<3, 3>() = K;
  J.topRightCorner<3, 1>() = p.first_moment();
  J.bottomLeftCorner<1, 3>() = p.first_moment().transpose();
  J(3, 3) = p.mass();
  return J;
}

InertialParams params_from_pseudo_inertia(const Mat4& J) {
  const Mat3 K = J.topLeftCorner<3, 3>();
  const Mat3 I = K.trace() * Mat3::Identity() - K;
  return InertialParams(J(3, 3), J.topRightCorner<3, 1>(), I);
}

const std::array<Mat4, 10>& pseudo_inertia_basis() {
  static const std::array<Mat4, 10> basis = [] {
    std::array<Mat4, 10> b;
    for (int a = 0; a < 10; ++a) {
      Vec10 e = Vec10::Zero();
      e(a) = 1.0;
      b[a] = pseudo_inertia(InertialParams(e));
    }
    return b;
  }();
  return basis;
}

Mat4 com_lmi(const InertialParams& p, const EllipsoidBound& e) {
  const Vec3 d = p.first_moment() - p.mass() * e.center;
  Mat4 C;
  C(0, 0) = p.mass();
  C.topRightCorner<1, 3>() = d.transpose();
  C.bottomLeftCorner<3, 1>() = d;
  C.bottomRightCorner<3, 3>() = p.mass() * e.shape();
  return C;
}

Mat4 qj_matrix(const EllipsoidBound& e) {
  const Mat3 Qs_inv = e.shape_inverse();
  const Vec3 u = Qs_inv * e.center;
  Mat4 Qj;
  Qj.topLeftCorner<3, 3>() = -Qs_inv;
  Qj.topRightCorner<3, 1>() = u;
  Qj.bottomLeftCorner<1, 3>() = u.transpose();
  Qj(3, 3) = 1.0 - e.center.dot(u);
  return Qj;
}

double density_realizability(const InertialParams& p, const EllipsoidBound& e) {
  return (pseudo_inertia(p) * qj_matrix(e)).trace();
}

Vec10 density_realizability_gradient(const EllipsoidBound& e) {
  const Mat4 Qj = qj_matrix(e);
  Vec10 g;
  for (int a = 0; a < 10; ++a) g(a) = (pseudo_inertia_basis()[a] * Qj).trace();
  return g;
}

ConsistencyReport is_fully_consistent(const InertialParams& p, const EllipsoidBound& e,
                                      double eps, double eps_feas) {
  ConsistencyReport r;
  r.eps = eps;
  r.eps_feas = eps_feas;

  Eigen::SelfAdjointEigenSolver<Mat4> esJ(pseudo_inertia(p));
  Eigen::SelfAdjointEigenSolver<Mat4> esC(com_lmi(p, e));
  r.min_eig_pseudo_inertia = esJ.eigenvalues().minCoeff();
  r.min_eig_com = esC.eigenvalues().minCoeff();
  r.trace_realizability = density_realizability(p, e);

  r.pseudo_inertia_pd = r.min_eig_pseudo_inertia > eps;
  r.com_in_ellipsoid = r.min_eig_com >= -eps_feas;
  r.density_realizable = r.trace_realizability >= -eps_feas;
  r.fully_consistent = r.pseudo_inertia_pd && r.com_in_ellipsoid && r.density_realizable;
  return r;
}

std::string ConsistencyReport::describe() const {
  std::ostringstream os;
  os << (fully_consistent ? "consistent" : "INCONSISTENT")
     << " [min_eig(J)=" << min_eig_pseudo_inertia << (pseudo_inertia_pd ? "" : " <= eps!")
     << ", min_eig(C)=" << min_eig_com << (com_in_ellipsoid ? "" : " < 0!")
     << ", tr(J Qj)=" << trace_realizability << (density_realizable ? "" : " < 0!") << "]";
  return os.str();
}

}  // namespace inertid
