#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "inertid/spatial.hpp"

namespace inertid {

/// Affine symmetric 4x4 constraint F(x) = B0 + sum_k x[idx_k] * B_k >= 0.
struct LmiCone {
  Mat4 B0 = Mat4::Zero();
  std::vector<std::pair<int, Mat4>> terms;

  Mat4 eval(const Eigen::VectorXd& x) const {
    Mat4 F = B0;
    for (const auto& [idx, B] : terms) F += x(idx) * B;
    return F;
  }
};

/// Sparse linear inequality a^T x - b >= 0.
struct LinearIneq {
  std::vector<std::pair<int, double>> a;
  double b = 0.0;

  double eval(const Eigen::VectorXd& x) const {
    double s = -b;
    for (const auto& [idx, w] : a) s += x(idx) * w;
    return s;
  }
};

/// Convex QP with LMI cones:  min x^T H x - 2 g^T x + c  s.t. cones, ineqs.
struct LmiQpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  double c = 0.0;
  std::vector<LmiCone> cones;
  std::vector<LinearIneq> ineqs;

  double objective(const Eigen::VectorXd& x) const {
    return x.dot(H * x) - 2.0 * g.dot(x) + c;
  }
  bool strictly_feasible(const Eigen::VectorXd& x) const;
};

struct LmiQpSettings {
  double gap_tol = 1e-11;    // target on nu_total / t (absolute, objective units)
  double newton_tol = 1e-9;  // on the squared Newton decrement
  int max_newton = 120;      // per centering stage
  int max_stages = 64;
  double t0 = 1.0;
  double mu = 10.0;
  bool polish = true;  // accept the unconstrained optimum when it is feasible
};

enum class LmiQpStatus { optimal, polished, stalled, max_iterations };

struct LmiQpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  double gap = 0.0;  // barrier suboptimality bound at the returned point
  int newton_iterations = 0;
  LmiQpStatus status = LmiQpStatus::optimal;
  std::string message;

  bool converged() const {
    return status == LmiQpStatus::optimal || status == LmiQpStatus::polished;
  }
};

/// Feasible-start log-barrier interior-point method. `x0` must be strictly
/// feasible; every iterate (and the returned point) stays strictly feasible.
LmiQpResult solve_lmi_qp(const LmiQpProblem& prob, const Eigen::VectorXd& x0,
                         const LmiQpSettings& settings = {});

}  // namespace inertid
