#include "wf/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace wf {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open \"" + path + "\" for reading");
  return in;
}

std::ofstream open_output(const std::string& path, bool append = false) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw io_error("cannot open \"" + path + "\" for writing");
  return out;
}

void expect_header(std::ifstream& in, const std::string& path, const std::string& expected) {
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected)
    throw io_error(path + ": expected header \"" + expected + "\", found \"" + line + "\"");
}

std::vector<std::string> next_row(std::ifstream& in, const std::string& path,
                                  size_t expected_fields, size_t line_number, bool& ok) {
  std::string line;
  ok = static_cast<bool>(std::getline(in, line));
  if (!ok) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.empty()) {
    ok = false;
    return {};
  }
  std::vector<std::string> fields = split_line(line);
  if (fields.size() != expected_fields)
    throw io_error(path + ":" + std::to_string(line_number) + ": expected " +
                   std::to_string(expected_fields) + " fields, found " +
                   std::to_string(fields.size()));
  return fields;
}

struct SummaryKey {
  std::string sensor;
  double rain;
  double fog;
  bool operator<(const SummaryKey& other) const {
    if (sensor != other.sensor) return sensor < other.sensor;
    if (rain != other.rain) return rain < other.rain;
    return fog < other.fog;
  }
};

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
  return buffer;
}

double parse_number(const std::string& text, const std::string& what) {
  if (text == "inf" || text == "+inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end)
    throw io_error("cannot parse " + what + " from \"" + text + "\"");
  return value;
}

std::vector<Frame> read_frames_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, path, "frame,t,x,y,z");

  std::vector<Frame> frames;
  size_t line_number = 1;
  bool ok = true;
  while (true) {
    ++line_number;
    const std::vector<std::string> fields = next_row(in, path, 5, line_number, ok);
    if (!ok) break;
    const auto index = static_cast<std::int64_t>(parse_number(fields[0], "frame index"));
    const double t = parse_number(fields[1], "timestamp");
    const Point3 point{parse_number(fields[2], "x"), parse_number(fields[3], "y"),
                       parse_number(fields[4], "z")};
    if (frames.empty() || frames.back().frame_index != index) {
      if (!frames.empty()) {
        if (index <= frames.back().frame_index)
          throw io_error(path + ":" + std::to_string(line_number) +
                         ": frame indices must be strictly increasing");
        if (t < frames.back().timestamp_s)
          throw io_error(path + ":" + std::to_string(line_number) +
                         ": timestamps must be non-decreasing");
      }
      frames.push_back({index, t, {}});
    }
    frames.back().points.push_back(point);
  }
  if (frames.empty()) throw io_error(path + ": no data rows");
  return frames;
}

void write_frames_csv(const std::string& path, const std::vector<Frame>& frames) {
  std::ofstream out = open_output(path);
  out << "frame,t,x,y,z\n";
  for (const Frame& frame : frames) {
    for (const Point3& p : frame.points) {
      out << frame.frame_index << ',' << format_number(frame.timestamp_s) << ','
          << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.z)
          << '\n';
    }
  }
  if (!out) throw io_error("failed writing \"" + path + "\"");
}

std::vector<MeasurementSummary> read_summary_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, path, "sensor,rain_mmh,fog_vis_m,d_p,n_bar,sigma,excluded");

  std::map<SummaryKey, size_t> index_of;
  std::vector<MeasurementSummary> summaries;
  size_t line_number = 1;
  bool ok = true;
  while (true) {
    ++line_number;
    const std::vector<std::string> fields = next_row(in, path, 7, line_number, ok);
    if (!ok) break;
    const SummaryKey key{fields[0], parse_number(fields[1], "rain rate"),
                         parse_number(fields[2], "fog visual range")};
    const SensorKind kind = sensor_kind_from_string(fields[0]);
    SummaryRow row;
    row.distance_m = parse_number(fields[3], "position");
    row.n_bar = parse_number(fields[4], "n_bar");
    row.sigma = parse_number(fields[5], "sigma");
    const double excluded = parse_number(fields[6], "excluded flag");
    row.excluded = excluded != 0.0;

    auto found = index_of.find(key);
    if (found == index_of.end()) {
      index_of.emplace(key, summaries.size());
      summaries.push_back({kind, {key.rain, key.fog}, {}});
      found = index_of.find(key);
    }
    MeasurementSummary& summary = summaries[found->second];
    for (const SummaryRow& existing : summary.rows)
      if (existing.distance_m == row.distance_m)
        throw io_error(path + ":" + std::to_string(line_number) +
                       ": duplicate position for one sensor/condition");
    summary.rows.push_back(row);
  }
  for (MeasurementSummary& summary : summaries) {
    std::sort(summary.rows.begin(), summary.rows.end(),
              [](const SummaryRow& a, const SummaryRow& b) {
                return a.distance_m < b.distance_m;
              });
  }
  return summaries;
}

void write_summary_csv(const std::string& path,
                       const std::vector<MeasurementSummary>& summaries, bool append) {
  const bool write_header = !append || !std::ifstream(path).good();
  std::ofstream out = open_output(path, append);
  if (write_header) out << "sensor,rain_mmh,fog_vis_m,d_p,n_bar,sigma,excluded\n";
  for (const MeasurementSummary& summary : summaries) {
    for (const SummaryRow& row : summary.rows) {
      out << to_string(summary.sensor) << ',' << format_number(summary.condition.rain_rate_mmh)
          << ',' << format_number(summary.condition.fog_visual_range_m) << ','
          << format_number(row.distance_m) << ',' << format_number(row.n_bar) << ','
          << format_number(row.sigma) << ',' << (row.excluded ? 1 : 0) << '\n';
    }
  }
  if (!out) throw io_error("failed writing \"" + path + "\"");
}

GainProfile read_gain_profile_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, path, "psi_deg,gain_db");
  std::vector<GainPoint> points;
  size_t line_number = 1;
  bool ok = true;
  while (true) {
    ++line_number;
    const std::vector<std::string> fields = next_row(in, path, 2, line_number, ok);
    if (!ok) break;
    points.push_back({deg_to_rad(parse_number(fields[0], "psi_deg")),
                      parse_number(fields[1], "gain_db")});
  }
  try {
    return GainProfile(std::move(points));
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

void write_sidecar_csv(const std::string& path, SensorKind sensor,
                       const WeatherCondition& condition,
                       const std::vector<SidecarRow>& rows) {
  std::ofstream out = open_output(path);
  out << "sensor,rain_mmh,fog_vis_m,d_p,cluster_size,expected_recurring,"
         "realized_recurring_mean\n";
  for (const SidecarRow& row : rows) {
    out << to_string(sensor) << ',' << format_number(condition.rain_rate_mmh) << ','
        << format_number(condition.fog_visual_range_m) << ',' << format_number(row.distance_m)
        << ',' << row.cluster_size << ',' << format_number(row.expected_recurring) << ','
        << format_number(row.realized_recurring_mean) << '\n';
  }
  if (!out) throw io_error("failed writing \"" + path + "\"");
}

std::vector<SidecarRow> read_sidecar_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, path,
                "sensor,rain_mmh,fog_vis_m,d_p,cluster_size,expected_recurring,"
                "realized_recurring_mean");
  std::vector<SidecarRow> rows;
  size_t line_number = 1;
  bool ok = true;
  while (true) {
    ++line_number;
    const std::vector<std::string> fields = next_row(in, path, 7, line_number, ok);
    if (!ok) break;
    SidecarRow row;
    row.distance_m = parse_number(fields[3], "position");
    row.cluster_size = static_cast<int>(parse_number(fields[4], "cluster size"));
    row.expected_recurring = parse_number(fields[5], "expected recurring count");
    row.realized_recurring_mean = parse_number(fields[6], "realized recurring count");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wf
