#ifndef CFSVD_BASELINE_HPP
#define CFSVD_BASELINE_HPP

#include <Eigen/Dense>
#include <string>

#include "cfsvd/ratings.hpp"

namespace cfsvd {

// Corrected-averages model: item means and user offsets shrunk toward the
// global statistics by pseudo-counts k1 / k2.
//
//   item_mean[i]   = (k1 * global_mean + sum of item i's ratings) / (k1 + n_i)
//   global_offset  = mean over known (u,i) of (r_ui - item_mean[i])
//   user_offset[u] = (k2 * global_offset + sum over u's items of
//                     (r_ui - item_mean[i])) / (k2 + n_u)
//
// An item with no ratings gets item_mean[i] = global_mean; a user with no
// ratings gets user_offset[u] = global_offset.  That is the cold-start
// behaviour the shrinkage exists for.
struct CorrectedAverages {
  double global_mean = 0.0;
  Eigen::VectorXd item_mean;    // per item, already shrunken
  double global_offset = 0.0;
  Eigen::VectorXd user_offset;  // per user, already shrunken
  double k1 = 25.0;
  double k2 = 10.0;
};

CorrectedAverages fit_corrected_averages(const RatingsMatrix& train,
                                         double k1 = 25.0, double k2 = 10.0);

// item_mean[i] + user_offset[u]; deliberately not clamped to [1,5].
double predict_corrected(const CorrectedAverages& model, int user, int item);

// Dense matrix with known entries kept and missing entries predicted.
Eigen::MatrixXd fill_corrected(const RatingsMatrix& train,
                               const CorrectedAverages& model);

// Flat section-tagged CSV (globals, per-item, per-user) for inspection.
// `ids` supplies the raw ids; pass the matrix the model was fit on.
void save_corrected_averages(const CorrectedAverages& model,
                             const RatingsMatrix& ids,
                             const std::string& path);

}  // namespace cfsvd

#endif
