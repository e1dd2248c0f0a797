#include "shapeforge/pga.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "shapeforge/error.hpp"

namespace shapeforge {

PointList PgaModel::reconstruct(std::span<const double> sample_scores) const {
  PointList out = mean;
  const std::size_t count = std::min(sample_scores.size(), components.size());
  for (std::size_t c = 0; c < count; ++c) {
    const double coef = sample_scores[c] - frobenius_dot(mean, components[c]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += components[c][i] * coef;
  }
  return out;
}

std::vector<double> PgaModel::explained_fraction() const {
  std::vector<double> out(variances.size(), 0.0);
  if (total_variance <= 0.0) return out;
  for (std::size_t i = 0; i < variances.size(); ++i) out[i] = variances[i] / total_variance;
  return out;
}

PgaModel pga_from_tangents(PointList base, std::span<const PointList> tangents,
                           std::size_t n_components) {
  if (tangents.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "PGA needs at least two samples");
  }
  const std::size_t k = base.size();
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * k);
  const Eigen::Index count = static_cast<Eigen::Index>(tangents.size());

  Eigen::MatrixXd data(count, dim);
  for (Eigen::Index r = 0; r < count; ++r) {
    const auto& t = tangents[static_cast<std::size_t>(r)];
    if (t.size() != k) throw Error(ErrorKind::dimension_mismatch, "tangent vector size mismatch");
    for (std::size_t i = 0; i < k; ++i) {
      data(r, 2 * i) = t[i].x;
      data(r, 2 * i + 1) = t[i].y;
    }
  }
  const Eigen::RowVectorXd mu = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mu;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(count - 1);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::convergence, "covariance eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd evals = solver.eigenvalues().reverse();
  const Eigen::MatrixXd evecs = solver.eigenvectors().rowwise().reverse();

  PgaModel model;
  model.base = std::move(base);
  model.total_variance = cov.trace();
  model.mean.resize(k);
  for (std::size_t i = 0; i < k; ++i) model.mean[i] = {mu(2 * i), mu(2 * i + 1)};

  const double top = std::max(evals(0), 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > 1e-12 * std::max(top, 1e-300)) ++rank;
  }
  std::size_t keep = n_components;
  if (keep > rank) {
    model.warnings.push_back("requested " + std::to_string(n_components) +
                             " components but the tangent data has rank " + std::to_string(rank) +
                             "; truncated");
    keep = rank;
  }

  for (std::size_t c = 0; c < keep; ++c) {
    Eigen::VectorXd e = evecs.col(static_cast<Eigen::Index>(c));
    Eigen::Index arg = 0;
    e.cwiseAbs().maxCoeff(&arg);
    if (e(arg) < 0) e = -e;
    PointList comp(k);
    for (std::size_t i = 0; i < k; ++i) comp[i] = {e(2 * i), e(2 * i + 1)};
    model.components.push_back(std::move(comp));
    model.variances.push_back(std::max(evals(static_cast<Eigen::Index>(c)), 0.0));
  }

  model.scores.assign(tangents.size(), std::vector<double>(keep, 0.0));
  for (std::size_t j = 0; j < tangents.size(); ++j) {
    for (std::size_t c = 0; c < keep; ++c) {
      model.scores[j][c] = frobenius_dot(tangents[j], model.components[c]);
    }
  }
  return model;
}

PgaModel pga(std::span<const PreShape> shapes, const PreShape& base, std::size_t n_components) {
  std::vector<PointList> tangents;
  tangents.reserve(shapes.size());
  for (const auto& s : shapes) {
    const TangentVector v = procrustes_tangent_project(base, s);
    tangents.emplace_back(v.components().begin(), v.components().end());
  }
  return pga_from_tangents(PointList(base.points().begin(), base.points().end()), tangents,
                           n_components);
}

}  // namespace shapeforge
