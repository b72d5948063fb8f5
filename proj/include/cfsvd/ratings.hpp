#ifndef CFSVD_RATINGS_HPP
#define CFSVD_RATINGS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cfsvd {

using BoolMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Rating {
  int user;
  int item;
  int value;  // 1..5; "unknown" is absence of the entry, never a stored 0

  friend bool operator==(const Rating&, const Rating&) = default;
};

// Sparse user x item ratings.  Immutable after construction; the constructor
// enforces index ranges, the 1..5 value domain and (user, item) uniqueness.
// Raw dataset ids are kept so saved files and exported predictions speak the
// input's id space.
class RatingsMatrix {
public:
  RatingsMatrix(int num_users, int num_items, std::vector<Rating> entries,
                std::vector<std::string> user_ids = {},
                std::vector<std::string> item_ids = {});

  int num_users() const { return num_users_; }
  int num_items() const { return num_items_; }
  const std::vector<Rating>& entries() const { return entries_; }
  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }

  double density() const;

  // True where no rating is stored.
  BoolMask missing_mask() const;

  std::vector<int> ratings_per_user() const;
  std::vector<int> ratings_per_item() const;

private:
  int num_users_;
  int num_items_;
  std::vector<Rating> entries_;
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
};

enum class RatingsFormat {
  csv_triples,    // user_id,item_id,rating ; optional "user,item,rating" header
  movielens_tab,  // user <TAB> item <TAB> rating [<TAB> timestamp]
};

// Records as read from disk, before dense re-indexing.
struct RawTriples {
  struct Row {
    std::string user;
    std::string item;
    int rating;
  };
  std::vector<Row> rows;
};

RawTriples parse_ratings(const std::string& path, RatingsFormat format);

// Dense re-index in first-seen order.
RatingsMatrix index_ratings(const RawTriples& raw);

// Re-index two files over one shared id space (first-seen order, scanning
// `first` then `second`).  Users/items appearing only in the second file get
// empty rows/columns in the first -- that is the cold-start path.
std::pair<RatingsMatrix, RatingsMatrix> index_ratings_joint(
    const RawTriples& first, const RawTriples& second);

RatingsMatrix load_ratings(const std::string& path,
                           RatingsFormat format = RatingsFormat::csv_triples);

// csv_triples writer using raw ids; `comment` lines are emitted first,
// prefixed with "# " (the parser skips them).
void save_ratings(const RatingsMatrix& m, const std::string& path,
                  const std::vector<std::string>& comments = {});

// Sidecar map of raw id -> dense index, CSV `kind,raw_id,index`.
void save_id_maps(const RatingsMatrix& m, const std::string& path);

struct SplitPair {
  RatingsMatrix train;
  RatingsMatrix test;
  std::uint64_t seed;
  double train_fraction;
};

// Deterministic uniform partition of the entry set.  Both halves keep the
// full user/item index range; either half may leave a user or item with no
// entries.
SplitPair split(const RatingsMatrix& src, double train_fraction,
                std::uint64_t seed);

// sqrt(mean over truth entries of (prediction - rating)^2), on whatever
// scale `predictions` is in (here: raw 1..5 rating units).
double rmse(const Eigen::MatrixXd& predictions, const RatingsMatrix& truth);

struct Histogram {
  std::vector<double> edges;   // size bins + 1, equal width over [0, max]
  std::vector<long> counts;    // size bins
};

// Bins the per-item and per-user rating counts into `bins` equal-width,
// right-closed bins over [0, max count].
std::pair<Histogram, Histogram> rating_histograms(const RatingsMatrix& src,
                                                  int bins = 50);

// CSV `bin_lo,bin_hi,count`.
void save_histogram(const Histogram& h, const std::string& path);

}  // namespace cfsvd

#endif
