#include "cfsvd/clustering.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include "cfsvd/errors.hpp"

namespace cfsvd {

namespace {

// Nearest centroid per row, ties to the lowest cluster index.
// Returns the sum of squared distances as well.
double assign_all(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                  std::vector<int>& assignment) {
  const Eigen::Index m = points.rows();
  const Eigen::Index k = centroids.rows();
  assignment.resize(m);
  double objective = 0.0;
  for (Eigen::Index u = 0; u < m; ++u) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
      double d2 = (points.row(u) - centroids.row(c)).squaredNorm();
      if (d2 < best) {
        best = d2;
        best_c = static_cast<int>(c);
      }
    }
    assignment[u] = best_c;
    objective += best;
  }
  return objective;
}

// Cluster means; an empty cluster is reseeded to the point farthest from
// its current centroid so k stays constant.
void update_centroids(const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                      Eigen::MatrixXd& centroids) {
  const Eigen::Index m = points.rows();
  const Eigen::Index k = centroids.rows();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
  std::vector<long> counts(k, 0);
  for (Eigen::Index u = 0; u < m; ++u) {
    sums.row(assignment[u]) += points.row(u);
    ++counts[assignment[u]];
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    if (counts[c] > 0) {
      centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
    } else {
      Eigen::Index farthest = 0;
      double best = -1.0;
      for (Eigen::Index u = 0; u < m; ++u) {
        double d2 = (points.row(u) - centroids.row(c)).squaredNorm();
        if (d2 > best) {
          best = d2;
          farthest = u;
        }
      }
      centroids.row(c) = points.row(farthest);
    }
  }
}

std::vector<long> cluster_sizes(const std::vector<int>& assignment, int k) {
  std::vector<long> counts(k, 0);
  for (int a : assignment) ++counts[a];
  return counts;
}

}  // namespace

ClusterModel kmeans(const Eigen::MatrixXd& points,
                    const Eigen::MatrixXd& initial_centroids, int max_iters,
                    double tol) {
  const Eigen::Index m = points.rows();
  const int k = static_cast<int>(initial_centroids.rows());
  if (k < 1) throw ConfigError("need at least one cluster");
  if (k > m) throw ConfigError("more clusters (" + std::to_string(k) +
                               ") than points (" + std::to_string(m) + ")");
  if (initial_centroids.cols() != points.cols()) {
    throw ConfigError("centroid dimension does not match point dimension");
  }
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");

  ClusterModel model;
  model.k = k;
  model.centroids = initial_centroids;

  double prev_objective = assign_all(points, model.centroids, model.assignment);
  model.objective_history.push_back(prev_objective);

  std::vector<int> next_assignment;
  for (int it = 1; it <= max_iters; ++it) {
    update_centroids(points, model.assignment, model.centroids);
    double objective = assign_all(points, model.centroids, next_assignment);
    model.objective_history.push_back(objective);
    model.iterations_run = it;

    bool stable = next_assignment == model.assignment;
    model.assignment = next_assignment;
    model.objective = objective;
    if (stable) break;
    double rel = prev_objective > 0.0 ? (prev_objective - objective) / prev_objective
                                      : prev_objective - objective;
    if (rel < tol) break;
    prev_objective = objective;
  }

  // Degenerate inputs (duplicate points) can finish with an empty cluster;
  // steal the farthest point from any cluster that can spare one.
  std::vector<long> counts = cluster_sizes(model.assignment, k);
  bool repaired = false;
  for (int c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    Eigen::Index farthest = -1;
    double best = -1.0;
    for (Eigen::Index u = 0; u < m; ++u) {
      if (counts[model.assignment[u]] < 2) continue;
      double d2 = (points.row(u) - model.centroids.row(c)).squaredNorm();
      if (d2 > best) {
        best = d2;
        farthest = u;
      }
    }
    if (farthest < 0) continue;  // k <= m guarantees a donor exists
    --counts[model.assignment[farthest]];
    model.assignment[farthest] = c;
    counts[c] = 1;
    repaired = true;
  }
  if (repaired) {
    update_centroids(points, model.assignment, model.centroids);
    double objective = 0.0;
    for (Eigen::Index u = 0; u < m; ++u) {
      objective += (points.row(u) - model.centroids.row(model.assignment[u])).squaredNorm();
    }
    model.objective = objective;
  }
  return model;
}

std::vector<NeighborWeight> weights_for(const Eigen::MatrixXd& points,
                                        const ClusterModel& model, int user) {
  if (user < 0 || user >= static_cast<int>(model.assignment.size())) {
    throw ConfigError("user index out of range");
  }
  const int cluster = model.assignment[user];
  std::vector<NeighborWeight> weights;
  for (int v = 0; v < static_cast<int>(model.assignment.size()); ++v) {
    if (v == user || model.assignment[v] != cluster) continue;
    double d = (points.row(user) - points.row(v)).norm();
    weights.push_back({v, d, 1.0 / (1.0 + d * d)});
  }
  return weights;
}

Eigen::MatrixXd predict_weighted(const Eigen::MatrixXd& points,
                                 const ClusterModel& model, const BoolMask& missing) {
  const Eigen::Index m = points.rows();
  if (static_cast<Eigen::Index>(model.assignment.size()) != m ||
      missing.rows() != m || missing.cols() != points.cols()) {
    throw ConfigError("model/mask shape does not match points");
  }
  Eigen::MatrixXd result = points;

  std::vector<std::vector<int>> members(model.k);
  for (int u = 0; u < m; ++u) members[model.assignment[u]].push_back(u);

  for (const std::vector<int>& mem : members) {
    const auto size = static_cast<Eigen::Index>(mem.size());
    if (size <= 1) continue;  // singleton keeps its own placeholder

    Eigen::MatrixXd rows(size, points.cols());
    for (Eigen::Index a = 0; a < size; ++a) rows.row(a) = points.row(mem[a]);

    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index a = 0; a < size; ++a) {
      for (Eigen::Index b = a + 1; b < size; ++b) {
        double d2 = (rows.row(a) - rows.row(b)).squaredNorm();
        double w = 1.0 / (1.0 + d2);
        weights(a, b) = w;
        weights(b, a) = w;
      }
    }
    Eigen::VectorXd denom = weights.rowwise().sum();
    Eigen::MatrixXd averaged = weights * rows;
    averaged.array().colwise() /= denom.array();

    for (Eigen::Index a = 0; a < size; ++a) {
      int u = mem[a];
      for (Eigen::Index i = 0; i < points.cols(); ++i) {
        if (missing(u, i)) result(u, i) = averaged(a, i);
      }
    }
  }
  return result;
}

Eigen::MatrixXd predict_centroid(const Eigen::MatrixXd& points,
                                 const ClusterModel& model, const BoolMask& missing) {
  const Eigen::Index m = points.rows();
  if (static_cast<Eigen::Index>(model.assignment.size()) != m ||
      missing.rows() != m || missing.cols() != points.cols()) {
    throw ConfigError("model/mask shape does not match points");
  }
  Eigen::MatrixXd result = points;
  for (Eigen::Index u = 0; u < m; ++u) {
    for (Eigen::Index i = 0; i < points.cols(); ++i) {
      if (missing(u, i)) result(u, i) = model.centroids(model.assignment[u], i);
    }
  }
  return result;
}

void save_cluster_assignment(const ClusterModel& model, const RatingsMatrix& ids,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "user_id,cluster_id\n";
  for (std::size_t u = 0; u < model.assignment.size(); ++u) {
    out << ids.user_ids()[u] << ',' << model.assignment[u] << '\n';
  }
}

}  // namespace cfsvd
