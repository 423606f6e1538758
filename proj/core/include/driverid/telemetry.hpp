#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace driverid {

// One second of channel readings. Channel values are aligned with the
// owning Dataset's channel_names, which keeps the per-record footprint
// small while every record shares one key set.
struct TelemetryRecord {
  std::int64_t timestamp_s = 0;
  std::vector<double> channels;
  std::string driver_label;
  std::string road_type = "unspecified";
  std::string trip_id;

  bool operator==(const TelemetryRecord&) const = default;
};

// Contiguous records from one driver on one road type. Timestamps are
// re-based to 0 and increase by exactly 1 second.
struct Trip {
  std::string trip_id;
  std::string driver_label;
  std::string road_type = "unspecified";
  std::vector<TelemetryRecord> records;

  std::size_t size() const { return records.size(); }
  bool operator==(const Trip&) const = default;
};

struct Dataset {
  std::vector<std::string> channel_names;
  std::vector<Trip> trips;
  std::string provenance;

  std::size_t record_count() const;
  // Index of a channel by name, or nullopt.
  std::optional<std::size_t> channel_index(const std::string& name) const;
  std::vector<std::string> driver_labels() const;  // sorted distinct
  std::vector<std::string> road_types() const;     // sorted distinct

  // Substance equality; provenance is a free-form descriptor and excluded.
  bool operator==(const Dataset& other) const {
    return channel_names == other.channel_names && trips == other.trips;
  }
};

// Checks the structural invariants (shared key set, strictly consecutive
// timestamps, uniform labels per trip, unique trip ids). Throws
// std::runtime_error describing the first violation.
void validate_dataset(const Dataset& d);

struct ChannelRange {
  double min;
  double max;
};

// Declared physical ranges for the channels named in the driving-pattern
// feature table (e.g. "Long term fuel trim bank1" in [-100, 100]).
const std::map<std::string, ChannelRange>& known_channel_ranges();

// Records whose value for a known channel falls outside its declared range;
// returns human-readable descriptions, empty when clean.
std::vector<std::string> range_violations(const Dataset& d);

// Splits a flat, labeled record sequence into trips. A new trip starts when
// driver_label or road_type changes, when the trip_id changes (if set), or
// when the timestamp gap exceeds gap_threshold_s (non-increasing timestamps
// always split). Output timestamps are re-based to start at 0. Empty input
// yields empty output.
std::vector<Trip> segment_trips(const std::vector<TelemetryRecord>& records,
                                std::int64_t gap_threshold_s = 10);

struct DatasetSummary {
  std::size_t total_records = 0;
  std::size_t trip_count = 0;
  std::vector<std::pair<std::string, std::size_t>> records_per_driver;  // sorted by label
  std::vector<std::pair<std::string, std::size_t>> records_per_road;    // sorted by road
  std::vector<std::string> channel_names;
  // Records arrive at 1 Hz, so duration in seconds equals the record count.
  std::size_t total_duration_s = 0;

  std::string to_text() const;
};

DatasetSummary dataset_summary(const Dataset& d);

}  // namespace driverid
