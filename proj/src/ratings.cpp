#include "cfsvd/ratings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "cfsvd/errors.hpp"
#include "cfsvd/rng.hpp"

namespace cfsvd {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

int parse_rating_field(const std::string& field, long line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": rating '" + field + "' is not an integer");
  }
  return value;
}

// to_chars gives the shortest round-trip representation, so repeated runs
// emit identical bytes.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

RatingsMatrix::RatingsMatrix(int num_users, int num_items,
                             std::vector<Rating> entries,
                             std::vector<std::string> user_ids,
                             std::vector<std::string> item_ids)
    : num_users_(num_users),
      num_items_(num_items),
      entries_(std::move(entries)),
      user_ids_(std::move(user_ids)),
      item_ids_(std::move(item_ids)) {
  if (num_users_ < 0 || num_items_ < 0) {
    throw ConfigError("matrix dimensions must be non-negative");
  }
  std::unordered_set<std::int64_t> seen;
  seen.reserve(entries_.size());
  for (const Rating& r : entries_) {
    if (r.user < 0 || r.user >= num_users_ || r.item < 0 || r.item >= num_items_) {
      throw DomainError("entry (" + std::to_string(r.user) + "," +
                        std::to_string(r.item) + ") outside " +
                        std::to_string(num_users_) + "x" + std::to_string(num_items_));
    }
    if (r.value < 1 || r.value > 5) {
      throw DomainError("rating " + std::to_string(r.value) + " at (" +
                        std::to_string(r.user) + "," + std::to_string(r.item) +
                        ") outside 1..5");
    }
    std::int64_t key = static_cast<std::int64_t>(r.user) * num_items_ + r.item;
    if (!seen.insert(key).second) {
      throw DuplicateError("duplicate rating for user " + std::to_string(r.user) +
                           ", item " + std::to_string(r.item));
    }
  }
  if (user_ids_.empty()) {
    user_ids_.reserve(num_users_);
    for (int u = 0; u < num_users_; ++u) user_ids_.push_back(std::to_string(u));
  }
  if (item_ids_.empty()) {
    item_ids_.reserve(num_items_);
    for (int i = 0; i < num_items_; ++i) item_ids_.push_back(std::to_string(i));
  }
  if (static_cast<int>(user_ids_.size()) != num_users_ ||
      static_cast<int>(item_ids_.size()) != num_items_) {
    throw ConfigError("id map size does not match matrix dimensions");
  }
}

double RatingsMatrix::density() const {
  if (num_users_ == 0 || num_items_ == 0) return 0.0;
  return static_cast<double>(entries_.size()) /
         (static_cast<double>(num_users_) * num_items_);
}

BoolMask RatingsMatrix::missing_mask() const {
  BoolMask mask = BoolMask::Constant(num_users_, num_items_, true);
  for (const Rating& r : entries_) mask(r.user, r.item) = false;
  return mask;
}

std::vector<int> RatingsMatrix::ratings_per_user() const {
  std::vector<int> counts(num_users_, 0);
  for (const Rating& r : entries_) ++counts[r.user];
  return counts;
}

std::vector<int> RatingsMatrix::ratings_per_item() const {
  std::vector<int> counts(num_items_, 0);
  for (const Rating& r : entries_) ++counts[r.item];
  return counts;
}

RawTriples parse_ratings(const std::string& path, RatingsFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  RawTriples raw;
  std::string line;
  long line_no = 0;
  bool saw_data = false;
  const char sep = format == RatingsFormat::csv_triples ? ',' : '\t';

  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;

    std::vector<std::string> fields = split_fields(stripped, sep);
    if (format == RatingsFormat::csv_triples) {
      if (!saw_data && fields.size() == 3 && fields[0] == "user" &&
          fields[1] == "item" && fields[2] == "rating") {
        continue;  // optional header
      }
      if (fields.size() != 3) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                         std::to_string(fields.size()));
      }
    } else {
      if (fields.size() != 3 && fields.size() != 4) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 3 or 4 tab-separated fields, got " +
                         std::to_string(fields.size()));
      }
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty id field");
    }
    int rating = parse_rating_field(fields[2], line_no);
    if (rating < 1 || rating > 5) {
      throw DomainError("line " + std::to_string(line_no) + ": rating " +
                        std::to_string(rating) + " outside 1..5");
    }
    raw.rows.push_back({fields[0], fields[1], rating});
    saw_data = true;
  }
  if (!saw_data) throw DataError("'" + path + "' contains no ratings");
  return raw;
}

namespace {

struct IdIndexer {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> ids;

  int get(const std::string& raw) {
    auto [it, inserted] = index.try_emplace(raw, static_cast<int>(ids.size()));
    if (inserted) ids.push_back(raw);
    return it->second;
  }
};

std::vector<Rating> map_rows(const RawTriples& raw, IdIndexer& users, IdIndexer& items) {
  std::vector<Rating> entries;
  entries.reserve(raw.rows.size());
  for (const auto& row : raw.rows) {
    entries.push_back({users.get(row.user), items.get(row.item), row.rating});
  }
  return entries;
}

}  // namespace

RatingsMatrix index_ratings(const RawTriples& raw) {
  IdIndexer users, items;
  std::vector<Rating> entries = map_rows(raw, users, items);
  return RatingsMatrix(static_cast<int>(users.ids.size()),
                       static_cast<int>(items.ids.size()), std::move(entries),
                       std::move(users.ids), std::move(items.ids));
}

std::pair<RatingsMatrix, RatingsMatrix> index_ratings_joint(
    const RawTriples& first, const RawTriples& second) {
  IdIndexer users, items;
  std::vector<Rating> first_entries = map_rows(first, users, items);
  std::vector<Rating> second_entries = map_rows(second, users, items);
  int m = static_cast<int>(users.ids.size());
  int n = static_cast<int>(items.ids.size());
  RatingsMatrix a(m, n, std::move(first_entries), users.ids, items.ids);
  RatingsMatrix b(m, n, std::move(second_entries), users.ids, items.ids);
  return {std::move(a), std::move(b)};
}

RatingsMatrix load_ratings(const std::string& path, RatingsFormat format) {
  return index_ratings(parse_ratings(path, format));
}

void save_ratings(const RatingsMatrix& m, const std::string& path,
                  const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (const std::string& c : comments) out << "# " << c << "\n";
  for (const Rating& r : m.entries()) {
    out << m.user_ids()[r.user] << ',' << m.item_ids()[r.item] << ',' << r.value << '\n';
  }
  if (!out) throw DataError("write to '" + path + "' failed");
}

void save_id_maps(const RatingsMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "kind,raw_id,index\n";
  for (int u = 0; u < m.num_users(); ++u) out << "user," << m.user_ids()[u] << ',' << u << '\n';
  for (int i = 0; i < m.num_items(); ++i) out << "item," << m.item_ids()[i] << ',' << i << '\n';
}

SplitPair split(const RatingsMatrix& src, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0,1)");
  }
  const std::size_t n = src.entries().size();
  if (n < 2) throw DataError("need at least 2 ratings to split");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order.data(), order.size());

  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  std::vector<Rating> train_entries, test_entries;
  train_entries.reserve(n_train);
  test_entries.reserve(n - n_train);
  for (std::size_t k = 0; k < n; ++k) {
    const Rating& r = src.entries()[order[k]];
    (k < n_train ? train_entries : test_entries).push_back(r);
  }

  RatingsMatrix train(src.num_users(), src.num_items(), std::move(train_entries),
                      src.user_ids(), src.item_ids());
  RatingsMatrix test(src.num_users(), src.num_items(), std::move(test_entries),
                     src.user_ids(), src.item_ids());
  return {std::move(train), std::move(test), seed, train_fraction};
}

double rmse(const Eigen::MatrixXd& predictions, const RatingsMatrix& truth) {
  if (truth.entries().empty()) throw DataError("RMSE undefined on an empty rating set");
  if (predictions.rows() < truth.num_users() || predictions.cols() < truth.num_items()) {
    throw DataError("prediction matrix does not cover the truth index range");
  }
  double sum_sq = 0.0;
  for (const Rating& r : truth.entries()) {
    double diff = predictions(r.user, r.item) - static_cast<double>(r.value);
    sum_sq += diff * diff;
  }
  return std::sqrt(sum_sq / static_cast<double>(truth.entries().size()));
}

namespace {

Histogram bin_counts(const std::vector<int>& counts, int bins) {
  long max_count = 0;
  for (int c : counts) max_count = std::max(max_count, static_cast<long>(c));

  Histogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  double width = max_count > 0 ? static_cast<double>(max_count) / bins : 1.0;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[b] = width * b;

  for (int c : counts) {
    // right-closed bins: bin 0 is [0, w], bin i is (i*w, (i+1)*w]
    long idx = c <= 0 ? 0 : (static_cast<long>(c) * bins + max_count - 1) / max_count - 1;
    ++h.counts[static_cast<std::size_t>(std::min<long>(idx, bins - 1))];
  }
  return h;
}

}  // namespace

std::pair<Histogram, Histogram> rating_histograms(const RatingsMatrix& src, int bins) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  return {bin_counts(src.ratings_per_item(), bins),
          bin_counts(src.ratings_per_user(), bins)};
}

void save_histogram(const Histogram& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
        << h.counts[b] << '\n';
  }
}

}  // namespace cfsvd
