#include "driverid/log_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

namespace driverid {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

char detect_delimiter(const std::string& header) {
  const char candidates[] = {',', ';', '\t'};
  char best = ',';
  std::size_t best_count = 0;
  for (char c : candidates) {
    std::size_t n = static_cast<std::size_t>(std::count(header.begin(), header.end(), c));
    if (n > best_count) {
      best = c;
      best_count = n;
    }
  }
  return best;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& cell, std::size_t line_no, const std::string& column) {
  const std::string t = trim(cell);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || t.empty()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": non-numeric value '" + cell +
                             "' in channel column '" + column + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string LogSchema::to_json_string() const {
  nlohmann::json j;
  j["label_column"] = label_column;
  if (road_column) j["road_column"] = *road_column;
  if (trip_column) j["trip_column"] = *trip_column;
  if (time_column) j["time_column"] = *time_column;
  if (delimiter) j["delimiter"] = std::string(1, *delimiter);
  return j.dump(2);
}

LogSchema LogSchema::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LogSchema s;
  if (j.contains("label_column")) s.label_column = j.at("label_column").get<std::string>();
  if (j.contains("road_column")) s.road_column = j.at("road_column").get<std::string>();
  if (j.contains("trip_column")) s.trip_column = j.at("trip_column").get<std::string>();
  if (j.contains("time_column")) s.time_column = j.at("time_column").get<std::string>();
  if (j.contains("delimiter")) {
    const std::string d = j.at("delimiter").get<std::string>();
    if (d.size() != 1) throw std::runtime_error("schema delimiter must be a single character");
    s.delimiter = d[0];
  }
  return s;
}

LogSchema LogSchema::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

void LogSchema::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schema file '" + path + "'");
  out << to_json_string() << "\n";
}

LogSchema canonical_schema() {
  LogSchema s;
  s.label_column = "Class";
  s.road_column = "Road";
  s.trip_column = "Trip";
  s.time_column = "Time";
  s.delimiter = ',';
  return s;
}

Dataset parse_log(std::istream& in, const LogSchema& schema) {
  std::string header_line;
  if (!std::getline(in, header_line)) throw std::runtime_error("empty input: no header row");
  header_line = trim(header_line);
  const char delim = schema.delimiter ? *schema.delimiter : detect_delimiter(header_line);

  std::vector<std::string> header = split_line(header_line, delim);
  for (auto& h : header) h = trim(h);

  auto find_column = [&header](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };

  auto label_idx = find_column(schema.label_column);
  if (!label_idx) {
    throw std::runtime_error("missing label column '" + schema.label_column + "' in header");
  }
  std::optional<std::size_t> road_idx, trip_idx, time_idx;
  if (schema.road_column) {
    road_idx = find_column(*schema.road_column);
    if (!road_idx) throw std::runtime_error("missing road column '" + *schema.road_column + "'");
  }
  if (schema.trip_column) trip_idx = find_column(*schema.trip_column);
  if (schema.time_column) time_idx = find_column(*schema.time_column);

  Dataset d;
  std::vector<std::size_t> channel_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i == *label_idx || (road_idx && i == *road_idx) || (trip_idx && i == *trip_idx) ||
        (time_idx && i == *time_idx)) {
      continue;
    }
    channel_cols.push_back(i);
    d.channel_names.push_back(header[i]);
  }

  std::vector<TelemetryRecord> flat;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line, delim);
    if (cells.size() != header.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " columns, found " +
                               std::to_string(cells.size()));
    }
    TelemetryRecord rec;
    rec.driver_label = trim(cells[*label_idx]);
    if (road_idx) rec.road_type = trim(cells[*road_idx]);
    if (trip_idx) rec.trip_id = trim(cells[*trip_idx]);
    if (time_idx) {
      rec.timestamp_s = static_cast<std::int64_t>(
          parse_double(cells[*time_idx], line_no, header[*time_idx]));
    } else {
      rec.timestamp_s = static_cast<std::int64_t>(flat.size());
    }
    rec.channels.reserve(channel_cols.size());
    for (std::size_t c : channel_cols) {
      rec.channels.push_back(parse_double(cells[c], line_no, header[c]));
    }
    flat.push_back(std::move(rec));
  }
  if (flat.empty()) throw std::runtime_error("empty input: header present but no data rows");

  // Contiguity splitting: any gap greater than one second starts a new trip.
  d.trips = segment_trips(flat, 1);
  return d;
}

Dataset parse_log_file(const std::string& path, const LogSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log file '" + path + "'");
  Dataset d = parse_log(in, schema);
  d.provenance = path;
  return d;
}

void write_log(const Dataset& d, std::ostream& out) {
  out << "Time,Class,Road,Trip";
  for (const auto& name : d.channel_names) out << ',' << name;
  out << '\n';
  for (const auto& trip : d.trips) {
    for (const auto& rec : trip.records) {
      out << rec.timestamp_s << ',' << rec.driver_label << ',' << rec.road_type << ','
          << rec.trip_id;
      for (double v : rec.channels) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

void write_log_file(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write log file '" + path + "'");
  write_log(d, out);
}

}  // namespace driverid
