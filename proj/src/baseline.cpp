#include "cfsvd/baseline.hpp"

#include <fstream>
#include <vector>

#include "cfsvd/errors.hpp"

namespace cfsvd {

CorrectedAverages fit_corrected_averages(const RatingsMatrix& train, double k1,
                                         double k2) {
  if (train.entries().empty()) throw DataError("cannot fit on an empty training set");
  if (k1 < 0.0 || k2 < 0.0) throw ConfigError("shrinkage constants must be >= 0");

  const int num_items = train.num_items();
  const int num_users = train.num_users();

  std::vector<long> item_sum(num_items, 0);
  std::vector<long> item_count(num_items, 0);
  long total = 0;
  for (const Rating& r : train.entries()) {
    item_sum[r.item] += r.value;
    item_count[r.item] += 1;
    total += r.value;
  }

  CorrectedAverages model;
  model.k1 = k1;
  model.k2 = k2;
  model.global_mean =
      static_cast<double>(total) / static_cast<double>(train.entries().size());

  // Shrunken item means; an unrated item collapses to the global mean.
  model.item_mean.resize(num_items);
  for (int i = 0; i < num_items; ++i) {
    if (item_count[i] == 0) {
      model.item_mean[i] = model.global_mean;
    } else {
      model.item_mean[i] = (k1 * model.global_mean + static_cast<double>(item_sum[i])) /
                           (k1 + static_cast<double>(item_count[i]));
    }
  }

  // Offsets are measured against the already-shrunken item means.
  std::vector<double> user_dev(num_users, 0.0);
  std::vector<long> user_count(num_users, 0);
  double total_dev = 0.0;
  for (const Rating& r : train.entries()) {
    double dev = static_cast<double>(r.value) - model.item_mean[r.item];
    user_dev[r.user] += dev;
    user_count[r.user] += 1;
    total_dev += dev;
  }
  model.global_offset = total_dev / static_cast<double>(train.entries().size());

  model.user_offset.resize(num_users);
  for (int u = 0; u < num_users; ++u) {
    if (user_count[u] == 0) {
      model.user_offset[u] = model.global_offset;
    } else {
      model.user_offset[u] = (k2 * model.global_offset + user_dev[u]) /
                             (k2 + static_cast<double>(user_count[u]));
    }
  }
  return model;
}

double predict_corrected(const CorrectedAverages& model, int user, int item) {
  if (user < 0 || user >= model.user_offset.size() || item < 0 ||
      item >= model.item_mean.size()) {
    throw ConfigError("prediction index out of range");
  }
  return model.item_mean[item] + model.user_offset[user];
}

Eigen::MatrixXd fill_corrected(const RatingsMatrix& train,
                               const CorrectedAverages& model) {
  const int m = train.num_users();
  const int n = train.num_items();
  if (model.user_offset.size() != m || model.item_mean.size() != n) {
    throw ConfigError("model was fit on a differently shaped matrix");
  }
  Eigen::MatrixXd filled(m, n);
  for (int u = 0; u < m; ++u) {
    for (int i = 0; i < n; ++i) {
      filled(u, i) = model.item_mean[i] + model.user_offset[u];
    }
  }
  for (const Rating& r : train.entries()) {
    filled(r.user, r.item) = static_cast<double>(r.value);
  }
  return filled;
}

void save_corrected_averages(const CorrectedAverages& model,
                             const RatingsMatrix& ids, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out.precision(17);
  out << "section,key,value\n";
  out << "global,mean," << model.global_mean << '\n';
  out << "global,offset," << model.global_offset << '\n';
  out << "global,k1," << model.k1 << '\n';
  out << "global,k2," << model.k2 << '\n';
  for (int i = 0; i < model.item_mean.size(); ++i) {
    out << "item," << ids.item_ids()[i] << ',' << model.item_mean[i] << '\n';
  }
  for (int u = 0; u < model.user_offset.size(); ++u) {
    out << "user," << ids.user_ids()[u] << ',' << model.user_offset[u] << '\n';
  }
}

}  // namespace cfsvd
