#include "driverid/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace driverid {

namespace {

std::vector<int> label_ids_of(const std::vector<std::string>& labels,
                              std::vector<std::string>* class_set_out = nullptr) {
  std::vector<std::string> class_set;
  {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    class_set = std::move(sorted);
  }
  std::vector<int> ids(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ids[i] = static_cast<int>(
        std::lower_bound(class_set.begin(), class_set.end(), labels[i]) - class_set.begin());
  }
  if (class_set_out) *class_set_out = std::move(class_set);
  return ids;
}

double entropy_bits(std::span<const std::int64_t> counts, std::int64_t total) {
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (std::int64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

// Collects (value, label) columns over the masked records of a dataset.
void masked_column(const Dataset& d, std::size_t channel, const RecordMask& mask,
                   std::vector<double>& values, std::vector<std::string>* labels) {
  values.clear();
  if (labels) labels->clear();
  for (std::size_t ti = 0; ti < d.trips.size(); ++ti) {
    const Trip& trip = d.trips[ti];
    for (std::size_t ri = 0; ri < trip.records.size(); ++ri) {
      if (!mask.includes(ti, ri)) continue;
      values.push_back(trip.records[ri].channels[channel]);
      if (labels) labels->push_back(trip.driver_label);
    }
  }
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

RecordMask::RecordMask(const Dataset& d, bool included) {
  rows_.reserve(d.trips.size());
  for (const auto& trip : d.trips) {
    rows_.emplace_back(trip.records.size(), included ? 1 : 0);
  }
}

double label_entropy(std::span<const int> label_ids, int n_classes) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_classes), 0);
  for (int id : label_ids) counts[static_cast<std::size_t>(id)]++;
  return entropy_bits(counts, static_cast<std::int64_t>(label_ids.size()));
}

double info_gain(std::span<const double> values, std::span<const int> label_ids, int n_classes,
                 int bins) {
  if (values.size() != label_ids.size()) {
    throw std::invalid_argument("info_gain: values and labels differ in length");
  }
  if (values.size() < 2) throw std::invalid_argument("info_gain: need at least 2 samples");
  if (bins < 2) throw std::invalid_argument("info_gain: bins must be >= 2");

  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Equal-frequency bins assigned by the midrank of each run of tied values.
  // Pure integer arithmetic: bin = floor(((lo + hi - 1) * B) / (2n)) for a
  // run occupying sorted positions [lo, hi).
  const std::size_t nb = static_cast<std::size_t>(bins);
  std::vector<std::int64_t> joint(nb * static_cast<std::size_t>(n_classes), 0);
  std::vector<std::int64_t> bin_totals(nb, 0);
  std::vector<std::int64_t> class_totals(static_cast<std::size_t>(n_classes), 0);

  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && values[order[hi]] == values[order[lo]]) ++hi;
    const std::size_t bin = ((lo + hi - 1) * nb) / (2 * n);
    for (std::size_t p = lo; p < hi; ++p) {
      const int cls = label_ids[order[p]];
      joint[bin * static_cast<std::size_t>(n_classes) + static_cast<std::size_t>(cls)]++;
      bin_totals[bin]++;
      class_totals[static_cast<std::size_t>(cls)]++;
    }
    lo = hi;
  }

  const double h_labels = entropy_bits(class_totals, static_cast<std::int64_t>(n));
  double h_cond = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    if (bin_totals[b] == 0) continue;
    const double pb = static_cast<double>(bin_totals[b]) / static_cast<double>(n);
    h_cond += pb * entropy_bits({joint.data() + b * static_cast<std::size_t>(n_classes),
                                 static_cast<std::size_t>(n_classes)},
                                bin_totals[b]);
  }
  const double gain = h_labels - h_cond;
  return std::clamp(gain, 0.0, h_labels);
}

double info_gain(std::span<const double> values, const std::vector<std::string>& labels,
                 int bins) {
  std::vector<std::string> class_set;
  const std::vector<int> ids = label_ids_of(labels, &class_set);
  return info_gain(values, ids, static_cast<int>(class_set.size()), bins);
}

std::vector<std::string> remove_redundant(const Dataset& d, double corr_threshold, int bins,
                                          const RecordMask& mask) {
  if (corr_threshold <= 0.0 || corr_threshold > 1.0) {
    throw std::invalid_argument("corr_threshold must be in (0, 1]");
  }
  const std::size_t n_channels = d.channel_names.size();
  std::vector<std::vector<double>> columns(n_channels);
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < n_channels; ++c) {
    masked_column(d, c, mask, columns[c], c == 0 ? &labels : nullptr);
  }
  const std::size_t n = columns.empty() ? 0 : columns[0].size();
  if (n < 2) throw std::invalid_argument("remove_redundant: fewer than 2 records");

  std::vector<std::string> class_set;
  const std::vector<int> ids = label_ids_of(labels, &class_set);

  std::vector<bool> alive(n_channels, true);
  for (std::size_t c = 0; c < n_channels; ++c) {
    const auto [mn, mx] = std::minmax_element(columns[c].begin(), columns[c].end());
    if (*mn == *mx) alive[c] = false;  // zero variance
  }

  std::vector<double> gain(n_channels, 0.0);
  for (std::size_t c = 0; c < n_channels; ++c) {
    if (alive[c]) {
      gain[c] = info_gain(columns[c], ids, static_cast<int>(class_set.size()), bins);
    }
  }

  for (std::size_t i = 0; i < n_channels; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < n_channels; ++j) {
      if (!alive[i]) break;
      if (!alive[j]) continue;
      const double r = pearson(columns[i], columns[j]);
      if (std::abs(r) > corr_threshold) {
        std::size_t drop;
        if (gain[i] != gain[j]) {
          drop = gain[i] < gain[j] ? i : j;
        } else {
          drop = d.channel_names[i] < d.channel_names[j] ? j : i;
        }
        alive[drop] = false;
      }
    }
  }

  std::vector<std::string> retained;
  for (std::size_t c = 0; c < n_channels; ++c) {
    if (alive[c]) retained.push_back(d.channel_names[c]);
  }
  return retained;
}

std::vector<std::string> FeatureRanking::names() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.channel);
  return out;
}

std::string FeatureRanking::to_csv() const {
  std::ostringstream os;
  os << "rank,channel,score\n";
  for (const auto& e : entries) {
    os << e.rank << ',' << e.channel << ',' << e.score << '\n';
  }
  return os.str();
}

FeatureRanking rank_features(const Dataset& d, int bins,
                             const std::vector<std::string>& channels, const RecordMask& mask) {
  if (d.trips.empty()) throw std::invalid_argument("rank_features: empty dataset");
  const std::vector<std::string>& names = channels.empty() ? d.channel_names : channels;

  std::vector<double> values;
  std::vector<std::string> labels;
  std::vector<std::string> class_set;
  std::vector<int> ids;

  FeatureRanking ranking;
  for (const auto& name : names) {
    auto idx = d.channel_index(name);
    if (!idx) throw std::invalid_argument("rank_features: unknown channel '" + name + "'");
    masked_column(d, *idx, mask, values, labels.empty() ? &labels : nullptr);
    if (ids.empty()) ids = label_ids_of(labels, &class_set);
    ranking.entries.push_back(
        {name, info_gain(values, ids, static_cast<int>(class_set.size()), bins), 0});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankedFeature& a, const RankedFeature& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.channel < b.channel;
            });
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    ranking.entries[i].rank = static_cast<int>(i) + 1;
  }
  return ranking;
}

std::vector<std::string> select_top(const FeatureRanking& ranking, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > ranking.entries.size()) {
    throw std::out_of_range("select_top: k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(ranking.entries.size()) + "]");
  }
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.push_back(ranking.entries[static_cast<std::size_t>(i)].channel);
  return out;
}

NormalizationParams fit_normalization(const Dataset& d, const std::vector<std::string>& channels,
                                      const RecordMask& mask) {
  NormalizationParams p;
  p.channels = channels;
  p.mins.assign(channels.size(), 0.0);
  p.maxs.assign(channels.size(), 0.0);
  std::vector<double> values;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    auto idx = d.channel_index(channels[c]);
    if (!idx) throw std::invalid_argument("fit_normalization: unknown channel '" + channels[c] + "'");
    masked_column(d, *idx, mask, values, nullptr);
    if (values.empty()) throw std::invalid_argument("fit_normalization: no records in mask");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    p.mins[c] = *mn;
    p.maxs[c] = *mx;
  }
  return p;
}

double normalize_value(double x, double min_v, double max_v) {
  if (max_v == min_v) return 0.0;
  const double v = (x - min_v) / (max_v - min_v);
  return std::clamp(v, 0.0, 1.0);
}

std::vector<double> apply_normalization(const TelemetryRecord& rec, const Dataset& d,
                                        const NormalizationParams& params) {
  std::vector<double> out(params.size());
  for (std::size_t c = 0; c < params.size(); ++c) {
    auto idx = d.channel_index(params.channels[c]);
    if (!idx) {
      throw std::invalid_argument("apply_normalization: unknown channel '" + params.channels[c] +
                                  "'");
    }
    out[c] = normalize_value(rec.channels[*idx], params.mins[c], params.maxs[c]);
  }
  return out;
}

WindowStats window_statistics(std::span<const double> series, const WindowConfig& cfg) {
  const int w = cfg.window_size;
  if (w < 1) throw std::invalid_argument("window_size must be >= 1");
  if (series.size() < static_cast<std::size_t>(w)) {
    throw std::invalid_argument("series shorter than window");
  }
  const std::size_t n_out = series.size() - static_cast<std::size_t>(w) + 1;
  WindowStats out;
  if (cfg.use_mean) out.mean.resize(n_out);
  if (cfg.use_median) out.median.resize(n_out);
  if (cfg.use_std) out.stddev.resize(n_out);

  // Sorted copy of the current window, maintained incrementally; the values
  // it holds are exactly the window's multiset, so medians match a
  // sort-per-window recomputation bit for bit.
  std::vector<double> sorted;
  if (cfg.use_median) {
    sorted.assign(series.begin(), series.begin() + w);
    std::sort(sorted.begin(), sorted.end());
  }

  for (std::size_t pos = 0; pos < n_out; ++pos) {
    const double* win = series.data() + pos;
    if (cfg.use_median && pos > 0) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), *(win - 1));
      sorted.erase(it);
      const double incoming = win[w - 1];
      sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), incoming), incoming);
    }
    if (cfg.use_mean || cfg.use_std) {
      double sum = 0.0;
      for (int i = 0; i < w; ++i) sum += win[i];
      const double mean = sum / w;
      if (cfg.use_mean) out.mean[pos] = mean;
      if (cfg.use_std) {
        double ss = 0.0;
        for (int i = 0; i < w; ++i) {
          const double dv = win[i] - mean;
          ss += dv * dv;
        }
        out.stddev[pos] = std::sqrt(ss / w);
      }
    }
    if (cfg.use_median) {
      out.median[pos] =
          (w % 2 == 1) ? sorted[static_cast<std::size_t>(w / 2)]
                       : (sorted[static_cast<std::size_t>(w / 2) - 1] +
                          sorted[static_cast<std::size_t>(w / 2)]) /
                             2.0;
    }
  }
  return out;
}

bool build_feature_matrix(const Dataset& d, std::size_t trip_index,
                          const std::vector<std::string>& channels,
                          const NormalizationParams& params, const WindowConfig& cfg,
                          FeatureMatrix& out) {
  const Trip& trip = d.trips[trip_index];
  const int w = cfg.window_size;
  const std::size_t n_ch = channels.size();

  if (out.column_names.empty()) {
    out.column_names.reserve(n_ch * (1 + static_cast<std::size_t>(cfg.n_statistics())));
    for (const auto& c : channels) out.column_names.push_back(c);
    for (const auto& c : channels) {
      if (cfg.use_mean) out.column_names.push_back(c + "_mean");
      if (cfg.use_median) out.column_names.push_back(c + "_median");
      if (cfg.use_std) out.column_names.push_back(c + "_std");
    }
    out.n_cols = out.column_names.size();
  }

  if (trip.records.size() < static_cast<std::size_t>(w)) return false;

  // Normalized series per channel, then trailing-window statistics.
  std::vector<std::size_t> idx(n_ch);
  for (std::size_t c = 0; c < n_ch; ++c) {
    auto i = d.channel_index(channels[c]);
    if (!i) throw std::invalid_argument("build_feature_matrix: unknown channel '" + channels[c] + "'");
    idx[c] = *i;
  }
  std::vector<std::vector<double>> normalized(n_ch);
  std::vector<WindowStats> stats(n_ch);
  for (std::size_t c = 0; c < n_ch; ++c) {
    auto& series = normalized[c];
    series.resize(trip.records.size());
    for (std::size_t r = 0; r < trip.records.size(); ++r) {
      series[r] = normalize_value(trip.records[r].channels[idx[c]], params.mins[c], params.maxs[c]);
    }
    if (cfg.n_statistics() > 0) stats[c] = window_statistics(series, cfg);
  }

  const std::size_t n_vec = trip.records.size() - static_cast<std::size_t>(w) + 1;
  out.values.reserve(out.values.size() + n_vec * out.n_cols);
  for (std::size_t v = 0; v < n_vec; ++v) {
    const std::size_t end_rec = v + static_cast<std::size_t>(w) - 1;
    for (std::size_t c = 0; c < n_ch; ++c) out.values.push_back(normalized[c][end_rec]);
    for (std::size_t c = 0; c < n_ch; ++c) {
      if (cfg.use_mean) out.values.push_back(stats[c].mean[v]);
      if (cfg.use_median) out.values.push_back(stats[c].median[v]);
      if (cfg.use_std) out.values.push_back(stats[c].stddev[v]);
    }
    out.labels.push_back(trip.driver_label);
    out.road_types.push_back(trip.road_type);
    out.timestamps.push_back(trip.records[end_rec].timestamp_s);
    out.trip_indices.push_back(trip_index);
  }
  return true;
}

FeatureMatrix build_features(const Dataset& d, const std::vector<std::string>& channels,
                             const NormalizationParams& params, const WindowConfig& cfg,
                             const std::optional<std::string>& road_type,
                             std::size_t* short_trips) {
  FeatureMatrix m;
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < d.trips.size(); ++t) {
    if (road_type && d.trips[t].road_type != *road_type) continue;
    if (!build_feature_matrix(d, t, channels, params, cfg, m)) ++skipped;
  }
  if (short_trips) *short_trips = skipped;
  return m;
}

void write_feature_matrix(const FeatureMatrix& m, std::ostream& out) {
  for (std::size_t c = 0; c < m.column_names.size(); ++c) {
    if (c) out << ',';
    out << m.column_names[c];
  }
  out << ",Class,Road,Time\n";
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << ',' << m.labels[r] << ',' << m.road_types[r] << ',' << m.timestamps[r] << '\n';
  }
}

}  // namespace driverid
