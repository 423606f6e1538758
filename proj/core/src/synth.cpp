#include "driverid/synth.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "driverid/random.hpp"

namespace driverid {

Dataset synthesize_dataset(const SynthProfile& profile, std::uint64_t seed) {
  if (profile.drivers.empty()) throw std::invalid_argument("profile has no drivers");
  if (profile.channels.empty()) throw std::invalid_argument("profile has no channels");
  if (profile.seconds_per_trip < 1) throw std::invalid_argument("seconds_per_trip must be >= 1");
  if (profile.trips_per_road < 1) throw std::invalid_argument("trips_per_road must be >= 1");
  for (const auto& drv : profile.drivers) {
    if (drv.channels.size() != profile.channels.size()) {
      throw std::invalid_argument("driver '" + drv.label +
                                  "' channel model count differs from profile channels");
    }
    for (const auto& ch : drv.channels) {
      if (ch.stddev < 0.0) {
        throw std::invalid_argument("driver '" + drv.label + "': stddev must be >= 0");
      }
    }
  }

  Dataset d;
  d.provenance = "synthetic";
  for (const auto& ch : profile.channels) d.channel_names.push_back(ch.name);

  std::size_t trip_seq = 0;
  for (std::size_t di = 0; di < profile.drivers.size(); ++di) {
    const DriverSpec& drv = profile.drivers[di];
    for (std::size_t ri = 0; ri < profile.road_types.size(); ++ri) {
      for (int rep = 0; rep < profile.trips_per_road; ++rep) {
        Trip trip;
        trip.driver_label = drv.label;
        trip.road_type = profile.road_types[ri];
        trip.trip_id = "s" + std::to_string(trip_seq++);
        trip.records.reserve(static_cast<std::size_t>(profile.seconds_per_trip));

        // One independent stream per (driver, road, repeat, channel): the
        // generated series for a channel does not depend on how many other
        // channels or trips exist.
        std::vector<Rng> rngs;
        rngs.reserve(profile.channels.size());
        for (std::size_t ci = 0; ci < profile.channels.size(); ++ci) {
          rngs.emplace_back(derive_seed(seed, seed_tag::synth, di, ri,
                                        static_cast<std::uint64_t>(rep), ci));
        }

        for (int t = 0; t < profile.seconds_per_trip; ++t) {
          TelemetryRecord rec;
          rec.timestamp_s = t;
          rec.driver_label = trip.driver_label;
          rec.road_type = trip.road_type;
          rec.trip_id = trip.trip_id;
          rec.channels.resize(profile.channels.size());
          for (std::size_t ci = 0; ci < profile.channels.size(); ++ci) {
            const ChannelModel& m = drv.channels[ci];
            double v = m.mean + m.drift_per_s * t;
            if (m.stddev > 0.0) v = rngs[ci].normal(v, m.stddev);
            v = std::clamp(v, profile.channels[ci].min, profile.channels[ci].max);
            rec.channels[ci] = v;
          }
          trip.records.push_back(std::move(rec));
        }
        d.trips.push_back(std::move(trip));
      }
    }
  }
  return d;
}

SynthProfile make_separable_profile(int n_drivers, int n_channels, int seconds_per_trip,
                                    double mean_step, double stddev,
                                    const std::vector<std::string>& road_types,
                                    int trips_per_road) {
  if (n_drivers < 1) throw std::invalid_argument("n_drivers must be >= 1");
  if (n_channels < 1) throw std::invalid_argument("n_channels must be >= 1");
  SynthProfile p;
  p.seconds_per_trip = seconds_per_trip;
  p.road_types = road_types;
  p.trips_per_road = trips_per_road;
  for (int c = 0; c < n_channels; ++c) {
    char name[16];
    std::snprintf(name, sizeof(name), "sensor%02d", c);
    p.channels.push_back({name});
  }
  for (int dIdx = 0; dIdx < n_drivers; ++dIdx) {
    DriverSpec drv;
    drv.label = std::string(1, static_cast<char>('A' + dIdx % 26));
    if (dIdx >= 26) drv.label += std::to_string(dIdx / 26);
    for (int c = 0; c < n_channels; ++c) {
      // Cycle the driver ordering per channel so no two channels are
      // linearly redundant copies of each other.
      const int level = (dIdx + c) % n_drivers;
      drv.channels.push_back({mean_step * (level + 1), stddev, 0.0});
    }
    p.drivers.push_back(std::move(drv));
  }
  return p;
}

std::string SynthProfile::to_json_string() const {
  nlohmann::json j;
  j["seconds_per_trip"] = seconds_per_trip;
  j["trips_per_road"] = trips_per_road;
  j["road_types"] = road_types;
  j["channels"] = nlohmann::json::array();
  for (const auto& ch : channels) {
    nlohmann::json c{{"name", ch.name}};
    if (ch.min > -1e308) c["min"] = ch.min;
    if (ch.max < 1e308) c["max"] = ch.max;
    j["channels"].push_back(c);
  }
  j["drivers"] = nlohmann::json::array();
  for (const auto& drv : drivers) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : drv.channels) {
      models.push_back({{"mean", m.mean}, {"stddev", m.stddev}, {"drift_per_s", m.drift_per_s}});
    }
    j["drivers"].push_back({{"label", drv.label}, {"channels", models}});
  }
  return j.dump(2);
}

SynthProfile SynthProfile::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SynthProfile p;
  p.seconds_per_trip = j.value("seconds_per_trip", 300);
  p.trips_per_road = j.value("trips_per_road", 1);
  if (j.contains("road_types")) p.road_types = j.at("road_types").get<std::vector<std::string>>();
  for (const auto& c : j.at("channels")) {
    ChannelSpec spec;
    spec.name = c.at("name").get<std::string>();
    spec.min = c.value("min", -1e308);
    spec.max = c.value("max", 1e308);
    p.channels.push_back(std::move(spec));
  }
  for (const auto& drv : j.at("drivers")) {
    DriverSpec d;
    d.label = drv.at("label").get<std::string>();
    for (const auto& m : drv.at("channels")) {
      d.channels.push_back({m.value("mean", 0.0), m.value("stddev", 1.0),
                            m.value("drift_per_s", 0.0)});
    }
    p.drivers.push_back(std::move(d));
  }
  return p;
}

SynthProfile SynthProfile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

}  // namespace driverid
