#include "cfsvd/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "cfsvd/errors.hpp"

namespace cfsvd {

namespace {

// Neumaier-compensated sum; exact to the last bit for rating-sized values.
double compensated_sum(const double* x, Eigen::Index n) {
  double s = 0.0;
  double c = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double t = s + x[j];
    if (std::abs(s) >= std::abs(x[j])) {
      c += (s - t) + x[j];
    } else {
      c += (x[j] - t) + s;
    }
    s = t;
  }
  return s + c;
}

double column_mean(const Eigen::MatrixXd& m, Eigen::Index col) {
  return compensated_sum(m.col(col).data(), m.rows()) /
         static_cast<double>(m.rows());
}

}  // namespace

Eigen::MatrixXd mean_fill(const RatingsMatrix& train) {
  if (train.entries().empty()) throw DataError("cannot fill an empty matrix");
  const int m = train.num_users();
  const int n = train.num_items();

  std::vector<long> item_sum(n, 0);
  std::vector<long> item_count(n, 0);
  long total = 0;
  for (const Rating& r : train.entries()) {
    item_sum[r.item] += r.value;
    item_count[r.item] += 1;
    total += r.value;
  }
  const double global_mean =
      static_cast<double>(total) / static_cast<double>(train.entries().size());

  Eigen::MatrixXd filled(m, n);
  BoolMask missing = train.missing_mask();
  for (const Rating& r : train.entries()) {
    filled(r.user, r.item) = static_cast<double>(r.value);
  }

  std::vector<int> rows;
  rows.reserve(m);
  for (int i = 0; i < n; ++i) {
    rows.clear();
    for (int u = 0; u < m; ++u) {
      if (missing(u, i)) rows.push_back(u);
    }
    if (rows.empty()) continue;

    double p = item_count[i] > 0 ? static_cast<double>(item_sum[i]) /
                                       static_cast<double>(item_count[i])
                                 : global_mean;
    for (int u : rows) filled(u, i) = p;

    // Nudge the placeholder onto the fixed point of the column mean as
    // compute_stats evaluates it, so (placeholder - mu) is exactly zero
    // after normalization.  Converges in a couple of ulp-sized steps.
    for (int iter = 0; iter < 100; ++iter) {
      double mu = column_mean(filled, i);
      if (mu == p) break;
      p = mu;
      for (int u : rows) filled(u, i) = p;
    }
  }
  return filled;
}

NormalizationStats compute_stats(const Eigen::MatrixXd& filled) {
  const Eigen::Index m = filled.rows();
  const Eigen::Index n = filled.cols();
  if (m == 0 || n == 0) throw DataError("cannot compute stats of an empty matrix");

  NormalizationStats stats;
  stats.mu.resize(n);
  stats.sigma.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double mu = column_mean(filled, i);
    double sq = 0.0;
    for (Eigen::Index u = 0; u < m; ++u) {
      double d = filled(u, i) - mu;
      sq += d * d;
    }
    double sigma = std::sqrt(sq / static_cast<double>(m));
    stats.mu[i] = mu;
    stats.sigma[i] = sigma < 1e-12 ? 1.0 : sigma;  // constant-column repair
  }
  return stats;
}

Eigen::MatrixXd normalize(const Eigen::MatrixXd& m, const NormalizationStats& stats) {
  if (m.cols() != stats.mu.size()) throw ConfigError("stats length does not match columns");
  Eigen::MatrixXd out = m;
  out.rowwise() -= stats.mu.transpose();
  out.array().rowwise() /= stats.sigma.transpose().array();
  return out;
}

Eigen::MatrixXd denormalize(const Eigen::MatrixXd& m, const NormalizationStats& stats) {
  if (m.cols() != stats.mu.size()) throw ConfigError("stats length does not match columns");
  Eigen::MatrixXd out = m;
  out.array().rowwise() *= stats.sigma.transpose().array();
  out.rowwise() += stats.mu.transpose();
  return out;
}

TruncatedSvd truncated_svd(const Eigen::MatrixXd& m, int rank) {
  const Eigen::Index max_rank = std::min(m.rows(), m.cols());
  if (rank < 1 || rank > max_rank) {
    throw ConfigError("rank " + std::to_string(rank) + " outside 1.." +
                      std::to_string(max_rank));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.u = svd.matrixU().leftCols(rank);
  out.d = svd.singularValues().head(rank);
  out.v = svd.matrixV().leftCols(rank);
  if (svd.info() != Eigen::Success) {
    double residual = (m - reconstruct(out)).norm();
    throw ConvergenceError("SVD did not converge", residual);
  }
  return out;
}

Eigen::MatrixXd reconstruct(const TruncatedSvd& svd) {
  return svd.u * svd.d.asDiagonal() * svd.v.transpose();
}

Eigen::MatrixXd principal_components(const Eigen::MatrixXd& m, int k) {
  const Eigen::Index max_rank = std::min(m.rows(), m.cols());
  if (k < 1 || k > max_rank) {
    throw ConfigError("component count " + std::to_string(k) + " outside 1.." +
                      std::to_string(max_rank));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  Eigen::MatrixXd pcs = svd.matrixV().leftCols(k).transpose();
  for (Eigen::Index r = 0; r < pcs.rows(); ++r) {
    Eigen::Index argmax = 0;
    pcs.row(r).cwiseAbs().maxCoeff(&argmax);
    if (pcs(r, argmax) < 0.0) pcs.row(r) = -pcs.row(r);
  }
  return pcs;
}

}  // namespace cfsvd
