#pragma once

#include <Eigen/Dense>

#include "inertid/spatialdyn.hpp"

namespace inertid {

/// Orthogonal projector onto the null space of the contact Jacobian,
/// P = 1 - Jc^+ Jc. Annihilates Jc^T (contact-force terms).
struct Projector {
  Eigen::MatrixXd P;
  int rank_deficiency = 0;  // dimension of constraint space removed (rank of Jc)
  double svd_cutoff = 0.0;  // absolute singular-value cutoff that was applied
};

/// Builds P by SVD of Jc; singular values below cutoff_rel * sigma_max are
/// treated as zero. An empty Jc (zero rows) yields the identity.
Projector projector(const Eigen::MatrixXd& Jc, double cutoff_rel = 1e-8);

/// sign(x) with a deadband: |x| < deadband maps to 0.
double sign_deadband(double x, double deadband = 1e-3);

/// One projected regression block (Eq. of motion restricted to the contact
/// null space). The friction basis columns keep B_v, B_c as downstream
/// decision variables:
///   viscous.col(i)  = P S^T e_i v_i
///   coulomb.col(i)  = P S^T e_i sign(v_i)
/// so the residual is  A phi + viscous bv + coulomb bc - torque.
struct ProjectedSample {
  Eigen::MatrixXd A;        // P * Y
  Eigen::VectorXd torque;   // P * S^T tau
  Eigen::MatrixXd viscous;  // (n+6) x n
  Eigen::MatrixXd coulomb;  // (n+6) x n
};

ProjectedSample project_sample(const Regressor& Y, const Eigen::VectorXd& tau,
                               const Eigen::VectorXd& v_joints, const Projector& P,
                               double sign_deadband_eps = 1e-3);

}  // namespace inertid
