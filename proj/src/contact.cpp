#include "inertid/contact.hpp"

#include <stdexcept>

namespace inertid {

Projector projector(const Eigen::MatrixXd& Jc, double cutoff_rel) {
  Projector out;
  const int m = static_cast<int>(Jc.cols());
  out.P = Eigen::MatrixXd::Identity(m, m);
  if (Jc.rows() == 0) return out;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Jc, Eigen::ComputeThinV);
  const double sigma_max = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  out.svd_cutoff = cutoff_rel * sigma_max;
  // P = I - sum over retained right singular vectors v v^T.
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > out.svd_cutoff && svd.singularValues()(i) > 0.0) {
      out.P.noalias() -= svd.matrixV().col(i) * svd.matrixV().col(i).transpose();
      ++out.rank_deficiency;
    }
  }
  return out;
}

double sign_deadband(double x, double deadband) {
  if (x > deadband) return 1.0;
  if (x < -deadband) return -1.0;
  return 0.0;
}

ProjectedSample project_sample(const Regressor& Y, const Eigen::VectorXd& tau,
                               const Eigen::VectorXd& v_joints, const Projector& P,
                               double sign_deadband_eps) {
  const int m = static_cast<int>(Y.Y.rows());
  const int n = m - 6;
  if (tau.size() != n || v_joints.size() != n)
    throw std::invalid_argument("project_sample: torque/velocity dimension mismatch");
  if (P.P.rows() != m)
    throw std::invalid_argument("project_sample: projector dimension mismatch");

  ProjectedSample out;
  out.A.noalias() = P.P * Y.Y;
  // S^T embeds joint-space vectors into rows 6..; columns 6.. of P are P S^T.
  const auto PSt = P.P.rightCols(n);
  out.torque.noalias() = PSt * tau;
  out.viscous.resize(m, n);
  out.coulomb.resize(m, n);
  for (int i = 0; i < n; ++i) {
    out.viscous.col(i) = PSt.col(i) * v_joints(i);
    out.coulomb.col(i) = PSt.col(i) * sign_deadband(v_joints(i), sign_deadband_eps);
  }
  return out;
}

}  // namespace inertid
