#ifndef CFSVD_LINALG_HPP
#define CFSVD_LINALG_HPP

#include <Eigen/Dense>

#include "cfsvd/ratings.hpp"

namespace cfsvd {

// Per-item (column) normalization statistics.
struct NormalizationStats {
  Eigen::VectorXd mu;
  Eigen::VectorXd sigma;  // > 0; degenerate columns repaired to 1
};

struct TruncatedSvd {
  Eigen::MatrixXd u;  // M x C, orthonormal columns
  Eigen::VectorXd d;  // length C, non-increasing, >= 0
  Eigen::MatrixXd v;  // N x C, orthonormal columns
};

// Known entries kept; a missing (u,i) gets item i's observed mean, and a
// never-rated item's column gets the global mean.  The placeholder is the
// fixed point of the filled column's floating-point mean, so normalize()
// sends missing entries to exactly 0 (see compute_stats).
Eigen::MatrixXd mean_fill(const RatingsMatrix& train);

// mu = column mean (compensated summation), sigma = population standard
// deviation (divide by M); sigma below 1e-12 is repaired to 1.
NormalizationStats compute_stats(const Eigen::MatrixXd& filled);

Eigen::MatrixXd normalize(const Eigen::MatrixXd& m,
                          const NormalizationStats& stats);
Eigen::MatrixXd denormalize(const Eigen::MatrixXd& m,
                            const NormalizationStats& stats);

// Best rank-c approximation in Frobenius norm (thin SVD, deterministic).
TruncatedSvd truncated_svd(const Eigen::MatrixXd& m, int rank);

// U * diag(d) * V^T.
Eigen::MatrixXd reconstruct(const TruncatedSvd& svd);

// Top-k right singular vectors as rows (k x N).  Unit norm, ordered by
// singular value descending, sign fixed so each vector's largest-magnitude
// coordinate is positive.  Input columns are expected to be centered.
Eigen::MatrixXd principal_components(const Eigen::MatrixXd& m, int k);

}  // namespace cfsvd

#endif
