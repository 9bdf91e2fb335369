#include "fwcuts_test/projection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace fwcuts::testing {

namespace {

// Coefficients (summing to 1) of the min-norm point of the affine hull of the
// columns of q.
Eigen::VectorXd affine_min_norm(const Eigen::MatrixXd& q) {
  const Eigen::Index s = q.cols();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = q.transpose() * q;
  kkt.block(0, s, s, 1).setOnes();
  kkt.block(s, 0, 1, s).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
  rhs(s) = 1.0;
  return kkt.fullPivLu().solve(rhs).head(s);
}

}  // namespace

Projection project_onto_hull(std::span<const double> x, const std::vector<Vertex>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("project_onto_hull: no vertices");
  const Eigen::Index k = static_cast<Eigen::Index>(x.size());
  const Eigen::Index count = static_cast<Eigen::Index>(vertices.size());
  Eigen::MatrixXd p(k, count);
  for (Eigen::Index v = 0; v < count; ++v)
    for (Eigen::Index i = 0; i < k; ++i) p(i, v) = vertices[v][i] - x[i];

  double scale = 1.0;
  for (Eigen::Index v = 0; v < count; ++v) scale = std::max(scale, p.col(v).squaredNorm());
  const double tol = 1e-13 * scale;

  Eigen::Index start;
  p.colwise().squaredNorm().minCoeff(&start);
  std::vector<Eigen::Index> active{start};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd y = p.col(start);

  for (int major = 0; major < 10000; ++major) {
    Eigen::Index j;
    (y.transpose() * p).minCoeff(&j);
    if (y.squaredNorm() - y.dot(p.col(j)) <= tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(0.0);

    while (true) {
      Eigen::MatrixXd q(k, static_cast<Eigen::Index>(active.size()));
      for (std::size_t a = 0; a < active.size(); ++a) q.col(a) = p.col(active[a]);
      const Eigen::VectorXd alpha = affine_min_norm(q);
      if ((alpha.array() > 1e-12).all()) {
        for (std::size_t a = 0; a < active.size(); ++a) lambda[a] = alpha(a);
        break;
      }
      double theta = 1.0;
      for (std::size_t a = 0; a < active.size(); ++a)
        if (alpha(a) <= 1e-12) theta = std::min(theta, lambda[a] / (lambda[a] - alpha(a)));
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_lambda;
      for (std::size_t a = 0; a < active.size(); ++a) {
        const double l = theta * alpha(a) + (1.0 - theta) * lambda[a];
        if (l > 1e-12) {
          kept.push_back(active[a]);
          kept_lambda.push_back(l);
        }
      }
      active = std::move(kept);
      lambda = std::move(kept_lambda);
      if (active.size() == 1) {
        lambda[0] = 1.0;
        break;
      }
    }
    double total = 0.0;
    for (double l : lambda) total += l;
    y.setZero();
    for (std::size_t a = 0; a < active.size(); ++a) y += (lambda[a] / total) * p.col(active[a]);
  }

  Projection out;
  out.dist_sq = y.squaredNorm();
  Eigen::Index j;
  const double min_dot = (y.transpose() * p).minCoeff(&j);
  // f(z) = 1/2 |z|^2 is bounded below on the hull by f(y) - <y, y - p_j>.
  out.dist_sq_lower = std::max(0.0, out.dist_sq - 2.0 * (out.dist_sq - min_dot));
  out.point.resize(x.size());
  for (Eigen::Index i = 0; i < k; ++i) out.point[i] = y(i) + x[i];
  return out;
}

}  // namespace fwcuts::testing
