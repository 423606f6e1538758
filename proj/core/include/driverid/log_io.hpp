#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "driverid/telemetry.hpp"

namespace driverid {

// Column mapping for delimited per-second driving logs. The label column is
// required; every column not named here is treated as a numeric channel.
// When delimiter is unset it is auto-detected among comma/semicolon/tab.
struct LogSchema {
  std::string label_column = "Class";
  std::optional<std::string> road_column;
  std::optional<std::string> trip_column;
  std::optional<std::string> time_column;
  std::optional<char> delimiter;

  std::string to_json_string() const;
  static LogSchema from_json_string(const std::string& text);
  static LogSchema load(const std::string& path);
  void save(const std::string& path) const;
};

// Schema produced by write_log: comma delimited, Time/Class/Road/Trip
// columns then channels.
LogSchema canonical_schema();

// Parses a header-plus-rows delimited log into a Dataset. Rows are grouped
// into trips on driver/road/trip-id change or any break in timestamp
// contiguity; per-trip timestamps are re-based to 0. Without a time column,
// timestamps are row positions, so only label changes split. Throws
// std::runtime_error on: missing label column, empty input (no data rows),
// a non-numeric channel cell, or an inconsistent column count (all with the
// offending line number).
Dataset parse_log(std::istream& in, const LogSchema& schema = LogSchema{});
Dataset parse_log_file(const std::string& path, const LogSchema& schema = LogSchema{});

// Canonical serialization: comma delimited, header, one row per second,
// doubles printed in shortest round-trip form. parse_log(write_log(d))
// reproduces d exactly.
void write_log(const Dataset& d, std::ostream& out);
void write_log_file(const Dataset& d, const std::string& path);

}  // namespace driverid
