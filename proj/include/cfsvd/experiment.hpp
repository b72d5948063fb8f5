#ifndef CFSVD_EXPERIMENT_HPP
#define CFSVD_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "cfsvd/pipeline.hpp"
#include "cfsvd/ratings.hpp"

namespace cfsvd {

struct DatasetSummary {
  int users = 0;
  int items = 0;
  long train_ratings = 0;
  long test_ratings = 0;
  double density = 0.0;  // train ratings / (users * items)
};

struct ExperimentReport {
  PipelineConfig config;
  DatasetSummary dataset;
  double rmse = 0.0;        // on the test set
  double train_rmse = 0.0;  // reconstruction error on the train entries
  std::vector<StageTiming> timings;
};

// One pipeline run plus evaluation.  `result_out`, if given, receives the
// raw predictions (for exports).
ExperimentReport evaluate(const RatingsMatrix& train, const RatingsMatrix& test,
                          const PipelineConfig& cfg,
                          PredictionResult* result_out = nullptr);

enum class SweepAxis { lambda, rank, clusters };

SweepAxis sweep_axis_from_name(const std::string& name);  // ConfigError if unknown

// "lo:hi:step" (endpoints pinned exactly) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec);

struct SweepRow {
  double value;
  Variant variant;
  double rmse;
};

// One run per grid point per variant, executed on a small worker pool.
// Rows come back sorted by value (then variant order), so output bytes do
// not depend on the parallelism degree.
std::vector<SweepRow> run_sweep(const RatingsMatrix& train,
                                const RatingsMatrix& test, SweepAxis axis,
                                const std::vector<double>& grid,
                                const PipelineConfig& base,
                                const std::vector<Variant>& variants,
                                int threads = 0);

void save_sweep(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace cfsvd

#endif
