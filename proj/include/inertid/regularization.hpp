#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "inertid/consistency.hpp"

namespace inertid {

enum class MetricKind { geodesic_approx, euclidean, scaled_euclidean };

/// Positive-definite weight matrix on the stacked parameter space,
/// block-diagonal per link (10x10 blocks).
struct ParamMetric {
  Eigen::MatrixXd G;
  MetricKind kind = MetricKind::euclidean;

  double quadratic_form(const Eigen::VectorXd& d) const { return d.dot(G * d); }
};

using Mat10 = Eigen::Matrix<double, 10, 10>;

/// Hessian at phi_hat of the squared affine-invariant distance between
/// pseudo-inertia matrices, pulled back through phi -> J(phi):
///   G[a][b] = tr(J^-1 L_a J^-1 L_b),  J = J(phi_hat), L_a = dJ/dphi_a.
/// Requires J(phi_hat) > 0. Symmetrized and floored at 1e-9 I.
Mat10 geodesic_block(const InertialParams& prior);

/// Block-diagonal geodesic metric for a stacked prior vector. `link_names`
/// (when provided) are used in error messages for inconsistent priors.
ParamMetric geodesic_metric(const Eigen::VectorXd& phi_hat,
                            const std::vector<std::string>& link_names = {});

/// Identity (or per-block scaled) metric; fallback when priors are unreliable.
/// `scale` is an optional 10-vector applied as a diagonal to every block.
ParamMetric euclidean_metric(int n_b, const Eigen::VectorXd& scale = Eigen::VectorXd());

}  // namespace inertid
