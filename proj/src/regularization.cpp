#include "inertid/regularization.hpp"

#include <stdexcept>

namespace inertid {

Mat10 geodesic_block(const InertialParams& prior) {
  const Mat4 J = pseudo_inertia(prior);
  Eigen::LLT<Mat4> llt(J);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("geodesic_block: prior pseudo-inertia is not positive definite");
  const Mat4 J_inv = llt.solve(Mat4::Identity());

  // d^2(J(phi), J(phi_hat)) = ||log(Jh^-1/2 J Jh^-1/2)||_F^2 expands to
  // tr(Jh^-1 D Jh^-1 D) + O(D^3) around D = J(phi) - J(phi_hat).
  const auto& L = pseudo_inertia_basis();
  std::array<Mat4, 10> W;
  for (int a = 0; a < 10; ++a) W[a] = J_inv * L[a] * J_inv;

  Mat10 G;
  for (int a = 0; a < 10; ++a)
    for (int b = a; b < 10; ++b) {
      const double g = (W[a] * L[b]).trace();
      G(a, b) = g;
      G(b, a) = g;
    }
  G = 0.5 * (G + G.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Mat10> es(G);
  const double floor = 1e-9;
  if (es.eigenvalues().minCoeff() < floor) {
    Eigen::Matrix<double, 10, 1> ev = es.eigenvalues().cwiseMax(floor);
    G = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  }
  return G;
}

ParamMetric geodesic_metric(const Eigen::VectorXd& phi_hat,
                            const std::vector<std::string>& link_names) {
  if (phi_hat.size() % 10 != 0)
    throw std::invalid_argument("geodesic_metric: stacked prior size must be a multiple of 10");
  const int n_b = static_cast<int>(phi_hat.size() / 10);
  ParamMetric metric;
  metric.kind = MetricKind::geodesic_approx;
  metric.G = Eigen::MatrixXd::Zero(10 * n_b, 10 * n_b);
  for (int j = 0; j < n_b; ++j) {
    const InertialParams prior{Vec10(phi_hat.segment<10>(10 * j))};
    try {
      metric.G.block<10, 10>(10 * j, 10 * j) = geodesic_block(prior);
    } catch (const std::invalid_argument&) {
      const std::string name =
          j < static_cast<int>(link_names.size()) ? link_names[j] : std::to_string(j);
      throw std::invalid_argument("geodesic_metric: prior for link '" + name +
                                  "' is not physically consistent (J(phi) not PD)");
    }
  }
  return metric;
}

ParamMetric euclidean_metric(int n_b, const Eigen::VectorXd& scale) {
  ParamMetric metric;
  metric.kind = scale.size() ? MetricKind::scaled_euclidean : MetricKind::euclidean;
  metric.G = Eigen::MatrixXd::Identity(10 * n_b, 10 * n_b);
  if (scale.size()) {
    if (scale.size() != 10)
      throw std::invalid_argument("euclidean_metric: scale must have 10 entries");
    for (int j = 0; j < n_b; ++j)
      metric.G.block<10, 10>(10 * j, 10 * j) = scale.asDiagonal();
  }
  return metric;
}

}  // namespace inertid
