#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driverid/telemetry.hpp"

namespace driverid {

// Per-driver Gaussian channel model: value(t) = mean + drift_per_s * t + noise.
struct ChannelModel {
  double mean = 0.0;
  double stddev = 1.0;
  double drift_per_s = 0.0;
};

struct ChannelSpec {
  std::string name;
  // Emitted values are clamped to [min, max] when declared.
  double min = -1e308;
  double max = 1e308;
};

struct DriverSpec {
  std::string label;
  std::vector<ChannelModel> channels;  // aligned with SynthProfile::channels
};

struct SynthProfile {
  std::vector<ChannelSpec> channels;
  std::vector<DriverSpec> drivers;
  std::vector<std::string> road_types = {"unspecified"};
  int seconds_per_trip = 300;
  int trips_per_road = 1;

  std::string to_json_string() const;
  static SynthProfile from_json_string(const std::string& text);
  static SynthProfile load(const std::string& path);
};

// Deterministic generator: one trip per (driver, road, repeat), values drawn
// from the driver's channel models. A pure function of (profile, seed).
// Throws std::invalid_argument on stddev < 0 or empty profile.
Dataset synthesize_dataset(const SynthProfile& profile, std::uint64_t seed);

// Convenience profile where driver means are spaced mean_step apart and each
// channel cycles the driver ordering, so channels separate drivers without
// being mutually redundant.
SynthProfile make_separable_profile(int n_drivers, int n_channels, int seconds_per_trip,
                                    double mean_step = 10.0, double stddev = 1.0,
                                    const std::vector<std::string>& road_types = {"unspecified"},
                                    int trips_per_road = 1);

}  // namespace driverid
