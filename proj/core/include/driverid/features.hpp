#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driverid/telemetry.hpp"

namespace driverid {

// Per-trip record inclusion mask, used to fit training-fold-only artifacts
// during cross-validation. Default-constructed masks include everything.
class RecordMask {
 public:
  RecordMask() = default;
  explicit RecordMask(const Dataset& d, bool included = true);

  bool includes(std::size_t trip, std::size_t record) const {
    if (rows_.empty()) return true;
    return rows_[trip][record] != 0;
  }
  void set(std::size_t trip, std::size_t record, bool on) { rows_[trip][record] = on ? 1 : 0; }
  bool empty() const { return rows_.empty(); }

 private:
  std::vector<std::vector<std::uint8_t>> rows_;
};

// Information gain of a feature about labels, in bits:
//   H(labels) - H(labels | equal-frequency-binned values).
// Binning is midrank-based, so it depends only on the ordering and tie
// pattern of the values; any strictly monotone transform of the feature
// leaves the result bit-identical. Always in [0, H(labels)].
double info_gain(std::span<const double> values, std::span<const int> label_ids, int n_classes,
                 int bins = 16);
double info_gain(std::span<const double> values, const std::vector<std::string>& labels,
                 int bins = 16);

// Entropy of a label sequence in bits.
double label_entropy(std::span<const int> label_ids, int n_classes);

// Drops zero-variance channels, then for every pair with absolute Pearson
// correlation above corr_threshold drops the one with the lower info-gain
// score (ties: the lexicographically later name). Returned names keep the
// dataset's channel order. Requires at least 2 masked records.
std::vector<std::string> remove_redundant(const Dataset& d, double corr_threshold = 0.99,
                                          int bins = 16, const RecordMask& mask = {});

struct RankedFeature {
  std::string channel;
  double score = 0.0;
  int rank = 0;  // 1-based
};

struct FeatureRanking {
  std::vector<RankedFeature> entries;  // scores non-increasing

  std::vector<std::string> names() const;
  std::string to_csv() const;  // rank,channel,score
};

// Scores each channel by info gain against driver labels, sorted by score
// descending, ties broken by channel name ascending.
FeatureRanking rank_features(const Dataset& d, int bins = 16,
                             const std::vector<std::string>& channels = {},
                             const RecordMask& mask = {});

// First k channel names in rank order; throws std::out_of_range unless
// 1 <= k <= ranking size.
std::vector<std::string> select_top(const FeatureRanking& ranking, int k);

// Per-channel min/max observed on training data.
struct NormalizationParams {
  std::vector<std::string> channels;
  std::vector<double> mins;
  std::vector<double> maxs;

  std::size_t size() const { return channels.size(); }
};

NormalizationParams fit_normalization(const Dataset& d, const std::vector<std::string>& channels,
                                      const RecordMask& mask = {});

// (x - min) / (max - min), clamped to [0, 1]; a constant channel maps to 0.
double normalize_value(double x, double min_v, double max_v);

// Normalizes one record's values for the channels in params; throws on a
// channel missing from the dataset.
std::vector<double> apply_normalization(const TelemetryRecord& rec, const Dataset& d,
                                        const NormalizationParams& params);

struct WindowConfig {
  int window_size = 60;  // seconds; stride is fixed at 1
  bool use_mean = true;
  bool use_median = true;
  bool use_std = true;

  int n_statistics() const {
    return (use_mean ? 1 : 0) + (use_median ? 1 : 0) + (use_std ? 1 : 0);
  }
};

// One entry per window-end position t in [W, len]; the window covers
// seconds (t-W+1)..t. std is the population standard deviation; the median
// of an even-length window is the mean of the two central values. Throws
// std::invalid_argument when the series is shorter than W. Disabled
// statistics leave their vector empty.
struct WindowStats {
  std::vector<double> mean;
  std::vector<double> median;
  std::vector<double> stddev;
};

WindowStats window_statistics(std::span<const double> series, const WindowConfig& cfg);

// Feature vectors in row-major storage with per-row provenance.
struct FeatureMatrix {
  std::vector<std::string> column_names;
  std::size_t n_cols = 0;
  std::vector<double> values;  // row-major
  std::vector<std::string> labels;
  std::vector<std::string> road_types;
  std::vector<std::int64_t> timestamps;    // window-end second within the trip
  std::vector<std::size_t> trip_indices;   // index into the source dataset's trips

  std::size_t n_rows() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * n_cols, n_cols};
  }
};

// Builds the windowed vectors for one trip: normalized instantaneous values
// for each channel, then (mean, median, std) of the normalized series over
// the trailing window per channel. Vector length is
// |channels| * (1 + enabled statistics). A trip shorter than W contributes
// no vectors; the return value reports whether that happened.
bool build_feature_matrix(const Dataset& d, std::size_t trip_index,
                          const std::vector<std::string>& channels,
                          const NormalizationParams& params, const WindowConfig& cfg,
                          FeatureMatrix& out);

// All trips of a dataset (optionally restricted to one road type).
// short_trips, when given, receives the number of skipped too-short trips.
FeatureMatrix build_features(const Dataset& d, const std::vector<std::string>& channels,
                             const NormalizationParams& params, const WindowConfig& cfg,
                             const std::optional<std::string>& road_type = std::nullopt,
                             std::size_t* short_trips = nullptr);

// Delimited export: feature columns then Class/Road/Time.
void write_feature_matrix(const FeatureMatrix& m, std::ostream& out);

}  // namespace driverid
