#ifndef CFSVD_PIPELINE_HPP
#define CFSVD_PIPELINE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cfsvd/baseline.hpp"
#include "cfsvd/clustering.hpp"
#include "cfsvd/linalg.hpp"
#include "cfsvd/ratings.hpp"

namespace cfsvd {

enum class Variant {
  refined,          // corrected + k-means blend, then SVD
  baseline_svd,     // global-mean fill, then SVD
  corrected_only,   // corrected-averages fill, then SVD
  kmeans_only,      // k-means weighted fill, then SVD
  centroid_variant, // like refined but with closest-centroid predictions
};

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);  // ConfigError if unknown

struct PipelineConfig {
  double lambda = 0.6;  // blend weight on the corrected fill, in [0,1]
  int clusters = 7;     // K
  int rank = 28;        // C
  double k1 = 25.0;
  double k2 = 10.0;
  std::uint64_t seed = 42;  // echoed; stages in use are deterministic anyway
  int kmeans_max_iters = 100;
  double kmeans_tol = 1e-6;
  bool clamp_output = false;
  Variant variant = Variant::refined;
};

struct StageTiming {
  std::string stage;
  double seconds;
};

struct PredictionResult {
  Eigen::MatrixXd predictions;  // M x N, rating units
  PipelineConfig config;
  std::vector<StageTiming> timings;
};

// Masked entries get lambda*corr + (1-lambda)*omega, the rest is copied
// from corr (corr and omega agree there by construction).
Eigen::MatrixXd blend(const Eigen::MatrixXd& corr, const Eigen::MatrixXd& omega,
                      const BoolMask& missing, double lambda);

// The full refined pipeline: corrected fill, mean fill, normalization stats
// from the mean fill, normalize both, PCA seeds, k-means, weighted cluster
// predictions, lambda-blend of the missing entries, rank-C reconstruction,
// denormalize, optional clamp to [1,5].
PredictionResult run_refined(const RatingsMatrix& train,
                             const PipelineConfig& cfg);

// Dispatch on cfg.variant; lambda=1 reproduces corrected_only and lambda=0
// reproduces kmeans_only bit for bit.
PredictionResult run_variant(const RatingsMatrix& train,
                             const PipelineConfig& cfg);

// CSV `user_id,item_id,prediction` restricted to the query set's entries.
void save_predictions(const PredictionResult& result, const RatingsMatrix& query,
                      const std::string& path);

}  // namespace cfsvd

#endif
