#include "driverid/telemetry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace driverid {

std::size_t Dataset::record_count() const {
  std::size_t n = 0;
  for (const auto& t : trips) n += t.records.size();
  return n;
}

std::optional<std::size_t> Dataset::channel_index(const std::string& name) const {
  for (std::size_t i = 0; i < channel_names.size(); ++i) {
    if (channel_names[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Dataset::driver_labels() const {
  std::set<std::string> s;
  for (const auto& t : trips) s.insert(t.driver_label);
  return {s.begin(), s.end()};
}

std::vector<std::string> Dataset::road_types() const {
  std::set<std::string> s;
  for (const auto& t : trips) s.insert(t.road_type);
  return {s.begin(), s.end()};
}

void validate_dataset(const Dataset& d) {
  std::set<std::string> trip_ids;
  for (const auto& trip : d.trips) {
    if (!trip_ids.insert(trip.trip_id).second) {
      throw std::runtime_error("duplicate trip_id '" + trip.trip_id + "'");
    }
    std::int64_t expect = 0;
    for (const auto& rec : trip.records) {
      if (rec.channels.size() != d.channel_names.size()) {
        throw std::runtime_error("trip '" + trip.trip_id +
                                 "': record channel count differs from dataset channels");
      }
      if (rec.driver_label != trip.driver_label || rec.road_type != trip.road_type ||
          rec.trip_id != trip.trip_id) {
        throw std::runtime_error("trip '" + trip.trip_id + "': record labels differ from trip");
      }
      if (rec.timestamp_s != expect) {
        throw std::runtime_error("trip '" + trip.trip_id +
                                 "': timestamps must start at 0 and increase by 1");
      }
      ++expect;
    }
  }
}

const std::map<std::string, ChannelRange>& known_channel_ranges() {
  static const std::map<std::string, ChannelRange> ranges = {
      {"Long term fuel trim bank1", {-100.0, 100.0}},
      {"Intake air pressure", {0.0, 255.0}},
      {"Accelerator Pedal value", {0.0, 100.0}},
      {"Fuel consumption", {0.0, 10000.0}},
      {"Friction torque", {0.0, 100.0}},
      {"Maximum indicated engine torque", {0.0, 100.0}},
      {"Engine torque", {0.0, 100.0}},
      {"Calculated load value", {0.0, 100.0}},
      {"Activation of Air compressor", {0.0, 1.0}},
      {"Engine coolant temperature", {-40.0, 215.0}},
      {"Transmission oil temperature", {-40.0, 215.0}},
      {"Wheel velocity, front, left-hand", {0.0, 511.75}},
      {"Wheel velocity, front, right-hand", {0.0, 511.75}},
      {"Wheel velocity, rear, left-hand", {0.0, 511.75}},
      {"Torque converter speed", {0.0, 16383.75}},
  };
  return ranges;
}

std::vector<std::string> range_violations(const Dataset& d) {
  const auto& ranges = known_channel_ranges();
  std::vector<std::string> out;
  for (std::size_t c = 0; c < d.channel_names.size(); ++c) {
    auto it = ranges.find(d.channel_names[c]);
    if (it == ranges.end()) continue;
    for (const auto& trip : d.trips) {
      for (const auto& rec : trip.records) {
        const double v = rec.channels[c];
        if (v < it->second.min || v > it->second.max) {
          std::ostringstream msg;
          msg << "trip '" << trip.trip_id << "' t=" << rec.timestamp_s << " channel '"
              << d.channel_names[c] << "' value " << v << " outside [" << it->second.min << ", "
              << it->second.max << "]";
          out.push_back(msg.str());
        }
      }
    }
  }
  return out;
}

std::vector<Trip> segment_trips(const std::vector<TelemetryRecord>& records,
                                std::int64_t gap_threshold_s) {
  if (gap_threshold_s < 1) throw std::invalid_argument("gap_threshold must be >= 1");
  std::vector<Trip> trips;
  std::set<std::string> used_ids;

  auto unique_id = [&used_ids](const std::string& base) {
    std::string id = base;
    int suffix = 2;
    while (!used_ids.insert(id).second) {
      id = base + "#" + std::to_string(suffix++);
    }
    return id;
  };

  auto open_trip = [&](const TelemetryRecord& rec) {
    Trip t;
    t.driver_label = rec.driver_label;
    t.road_type = rec.road_type;
    std::string base =
        rec.trip_id.empty() ? "t" + std::to_string(trips.size()) : rec.trip_id;
    t.trip_id = unique_id(base);
    trips.push_back(std::move(t));
  };

  for (std::size_t i = 0; i < records.size(); ++i) {
    const TelemetryRecord& rec = records[i];
    bool fresh = trips.empty();
    if (!fresh) {
      const TelemetryRecord& prev = records[i - 1];
      const bool label_change = rec.driver_label != prev.driver_label ||
                                rec.road_type != prev.road_type ||
                                rec.trip_id != prev.trip_id;
      const std::int64_t gap = rec.timestamp_s - prev.timestamp_s;
      fresh = label_change || gap <= 0 || gap > gap_threshold_s;
    }
    if (fresh) open_trip(rec);

    Trip& cur = trips.back();
    TelemetryRecord out = rec;
    out.timestamp_s = static_cast<std::int64_t>(cur.records.size());
    out.trip_id = cur.trip_id;
    out.driver_label = cur.driver_label;
    out.road_type = cur.road_type;
    cur.records.push_back(std::move(out));
  }
  return trips;
}

DatasetSummary dataset_summary(const Dataset& d) {
  DatasetSummary s;
  s.channel_names = d.channel_names;
  s.trip_count = d.trips.size();
  std::map<std::string, std::size_t> per_driver, per_road;
  for (const auto& trip : d.trips) {
    per_driver[trip.driver_label] += trip.records.size();
    per_road[trip.road_type] += trip.records.size();
    s.total_records += trip.records.size();
  }
  s.records_per_driver.assign(per_driver.begin(), per_driver.end());
  s.records_per_road.assign(per_road.begin(), per_road.end());
  s.total_duration_s = s.total_records;
  return s;
}

std::string DatasetSummary::to_text() const {
  std::ostringstream os;
  os << "records: " << total_records << "  trips: " << trip_count
     << "  duration_s: " << total_duration_s << "\n";
  os << "drivers (" << records_per_driver.size() << "):\n";
  for (const auto& [label, n] : records_per_driver) {
    os << "  " << label << ": " << n << "\n";
  }
  os << "road types (" << records_per_road.size() << "):\n";
  for (const auto& [road, n] : records_per_road) {
    os << "  " << road << ": " << n << "\n";
  }
  os << "channels (" << channel_names.size() << "):";
  for (const auto& c : channel_names) os << " " << c << ";";
  os << "\n";
  return os.str();
}

}  // namespace driverid
