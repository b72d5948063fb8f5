#ifndef CFSVD_CLUSTERING_HPP
#define CFSVD_CLUSTERING_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cfsvd/ratings.hpp"

namespace cfsvd {

struct ClusterModel {
  int k = 0;
  Eigen::MatrixXd centroids;       // k x N
  std::vector<int> assignment;     // per user (row), < k
  double objective = 0.0;          // sum of squared point-to-centroid distances
  int iterations_run = 0;
  std::vector<double> objective_history;  // objective after each iteration
};

// Lloyd iteration from the given centroids.  Assignment ties break to the
// lowest cluster index; a cluster that goes empty is reseeded to the point
// farthest from its current centroid, so the final model has no empty
// cluster.  Stops when the assignment is stable, the relative objective
// improvement drops below tol, or after max_iters.
ClusterModel kmeans(const Eigen::MatrixXd& points,
                    const Eigen::MatrixXd& initial_centroids,
                    int max_iters = 100, double tol = 1e-6);

struct NeighborWeight {
  int user;
  double distance;  // euclidean
  double weight;    // 1 / (1 + distance^2)
};

// All users sharing u's cluster, excluding u itself.
std::vector<NeighborWeight> weights_for(const Eigen::MatrixXd& points,
                                        const ClusterModel& model, int user);

// Missing (u,i) becomes the weight-averaged value of u's cluster mates at
// column i (their placeholders included); known entries are copied.  A user
// alone in its cluster keeps its own value.
Eigen::MatrixXd predict_weighted(const Eigen::MatrixXd& points,
                                 const ClusterModel& model,
                                 const BoolMask& missing);

// Cheaper variant: missing (u,i) becomes the assigned centroid's coordinate.
Eigen::MatrixXd predict_centroid(const Eigen::MatrixXd& points,
                                 const ClusterModel& model,
                                 const BoolMask& missing);

// CSV `user_id,cluster_id` for inspection.
void save_cluster_assignment(const ClusterModel& model,
                             const RatingsMatrix& ids,
                             const std::string& path);

}  // namespace cfsvd

#endif
