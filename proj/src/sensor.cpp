#include "ksub/objectives/sensor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ksub/rng.hpp"

namespace ksub {

namespace {

bool parse_long(const std::string& s, long& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

// Dense ids for external tokens: numeric tokens sort numerically, otherwise
// lexicographically.
std::map<std::string, int> dense_ids(const std::set<std::string>& tokens) {
  std::vector<std::string> sorted(tokens.begin(), tokens.end());
  bool all_numeric = true;
  std::vector<long> numeric(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (!parse_long(sorted[i], numeric[i])) {
      all_numeric = false;
      break;
    }
  }
  if (all_numeric) {
    std::vector<size_t> order(sorted.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return numeric[a] < numeric[b]; });
    std::vector<std::string> by_value;
    for (size_t i : order) by_value.push_back(sorted[i]);
    sorted = std::move(by_value);
  }
  std::map<std::string, int> ids;
  for (size_t i = 0; i < sorted.size(); ++i) ids[sorted[i]] = static_cast<int>(i);
  return ids;
}

}  // namespace

EntropyObjective::EntropyObjective(SensorModel model, bool log2)
    : Objective(GroundSet(model.locations, model.types)),
      model_(std::move(model)),
      log_scale_(log2 ? 1.0 / std::log(2.0) : 1.0) {
  if (model_.records.empty()) {
    throw std::invalid_argument("entropy objective needs a nonempty record table");
  }
}

double EntropyObjective::value_of(const Assignment& x) const {
  std::vector<int> cols;
  for (int u = 0; u < x.n(); ++u) {
    int i = x.label(u);
    if (i != 0) cols.push_back(model_.column(i, u));
  }
  if (cols.empty()) return 0.0;

  std::unordered_map<std::string, int> counts;
  std::string key(cols.size(), '\0');
  for (const auto& record : model_.records) {
    for (size_t c = 0; c < cols.size(); ++c) {
      key[c] = static_cast<char>(record[static_cast<size_t>(cols[c])]);
    }
    ++counts[key];
  }

  double total = static_cast<double>(model_.records.size());
  double h = 0.0;
  for (const auto& [tuple, count] : counts) {
    double p = static_cast<double>(count) / total;
    h -= p * std::log(p);
  }
  return h * log_scale_;
}

double entropy_eval(const SensorModel& model, const Assignment& x, bool log2) {
  return EntropyObjective(model, log2).eval(x);
}

SensorLog gen_sensor_log(int locations, int types, int records, int levels,
                         double correlation, uint64_t seed) {
  if (levels < 2) throw std::invalid_argument("sensor generator needs >= 2 levels");
  Rng rng(seed);
  SensorLog log;
  log.rows.reserve(static_cast<size_t>(records) * static_cast<size_t>(types) *
                   static_cast<size_t>(locations));
  for (int t = 0; t < records; ++t) {
    int shared = rng.next_int(0, levels - 1);
    for (int type = 1; type <= types; ++type) {
      for (int loc = 0; loc < locations; ++loc) {
        int v = (rng.next_unit() < correlation) ? shared
                                                : rng.next_int(0, levels - 1);
        log.rows.push_back({loc, type, t, static_cast<double>(v)});
      }
    }
  }
  return log;
}

SensorModel quantize_sensor_log(const SensorLog& log, int locations, int types,
                                int bins) {
  if (bins < 1 || bins > 255) {
    throw std::invalid_argument("bin count must lie in [1, 255]");
  }
  int columns = locations * types;
  // value per (column, timestamp)
  std::vector<std::map<long, double>> by_column(static_cast<size_t>(columns));
  for (const SensorReading& r : log.rows) {
    if (r.location < 0 || r.location >= locations) {
      throw ParseError("location out of range: " + std::to_string(r.location));
    }
    if (r.type < 1 || r.type > types) {
      throw ParseError("unknown topic index: " + std::to_string(r.type));
    }
    int col = (r.type - 1) * locations + r.location;
    by_column[static_cast<size_t>(col)][r.timestamp] = r.value;
  }

  // Timestamps observed in every column form the synchronized records.
  std::vector<long> complete;
  for (const auto& [ts, value] : by_column[0]) {
    bool everywhere = true;
    for (int c = 1; c < columns; ++c) {
      if (!by_column[static_cast<size_t>(c)].count(ts)) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) complete.push_back(ts);
  }
  if (complete.empty()) {
    throw ParseError("no timestamp carries a reading for every (type, location)");
  }

  std::vector<double> lo(static_cast<size_t>(columns));
  std::vector<double> width(static_cast<size_t>(columns));
  for (int c = 0; c < columns; ++c) {
    double mn = by_column[static_cast<size_t>(c)].at(complete[0]);
    double mx = mn;
    for (long ts : complete) {
      double v = by_column[static_cast<size_t>(c)].at(ts);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    lo[static_cast<size_t>(c)] = mn;
    width[static_cast<size_t>(c)] = (mx - mn) / static_cast<double>(bins);
  }

  SensorModel model;
  model.locations = locations;
  model.types = types;
  model.bins = bins;
  model.records.reserve(complete.size());
  for (long ts : complete) {
    std::vector<int> row(static_cast<size_t>(columns));
    for (int c = 0; c < columns; ++c) {
      double v = by_column[static_cast<size_t>(c)].at(ts);
      int bin = 0;
      if (width[static_cast<size_t>(c)] > 0.0) {
        bin = static_cast<int>((v - lo[static_cast<size_t>(c)]) /
                               width[static_cast<size_t>(c)]);
        bin = std::min(bin, bins - 1);
      }
      row[static_cast<size_t>(c)] = bin;
    }
    model.records.push_back(std::move(row));
  }

  model.domain_sizes.resize(static_cast<size_t>(columns));
  for (int c = 0; c < columns; ++c) {
    std::set<int> seen;
    for (const auto& row : model.records) seen.insert(row[static_cast<size_t>(c)]);
    model.domain_sizes[static_cast<size_t>(c)] = static_cast<int>(seen.size());
  }
  return model;
}

SensorModel gen_sensor(int locations, int types, int records, int bins,
                       uint64_t seed, double correlation) {
  return quantize_sensor_log(
      gen_sensor_log(locations, types, records, bins, correlation, seed),
      locations, types, bins);
}

std::shared_ptr<EntropyObjective> gen_sensor_objective(int locations, int types,
                                                       int records, int bins,
                                                       uint64_t seed,
                                                       double correlation) {
  return std::make_shared<EntropyObjective>(
      gen_sensor(locations, types, records, bins, seed, correlation));
}

void write_sensor_csv(const SensorLog& log, std::ostream& out) {
  out << "location,type,timestamp,value\n";
  char buf[64];
  for (const SensorReading& r : log.rows) {
    snprintf(buf, sizeof(buf), "%.9g", r.value);
    out << r.location << "," << r.type << "," << r.timestamp << "," << buf
        << "\n";
  }
}

SensorLog read_sensor_csv(std::istream& in, int expected_types) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "location,type,timestamp,value") {
    throw ParseError("missing sensor CSV header 'location,type,timestamp,value'");
  }

  struct RawRow {
    std::string location;
    int type;
    std::string timestamp;
    double value;
  };
  std::vector<RawRow> raw;
  std::set<std::string> locations;
  std::set<std::string> timestamps;

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 4 comma-separated fields");
    }
    long type_long;
    if (!parse_long(fields[1], type_long) || type_long < 1) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown topic index '" + fields[1] + "'");
    }
    if (expected_types > 0 && type_long > expected_types) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown topic index " + std::to_string(type_long));
    }
    double value;
    if (!parse_double(fields[3], value)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": malformed value '" + fields[3] + "'");
    }
    raw.push_back({fields[0], static_cast<int>(type_long), fields[2], value});
    locations.insert(fields[0]);
    timestamps.insert(fields[2]);
  }
  if (raw.empty()) {
    throw ParseError("sensor CSV has no data rows");
  }

  std::map<std::string, int> loc_ids = dense_ids(locations);
  std::map<std::string, int> ts_ids = dense_ids(timestamps);

  SensorLog log;
  log.rows.reserve(raw.size());
  for (const RawRow& r : raw) {
    log.rows.push_back({loc_ids.at(r.location), r.type,
                        static_cast<long>(ts_ids.at(r.timestamp)), r.value});
  }
  return log;
}

SensorModel load_sensor_csv(const std::string& path, int bins,
                            int expected_types) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sensor CSV: " + path);
  SensorLog log = read_sensor_csv(in, expected_types);
  int locations = 0;
  int types = 0;
  for (const SensorReading& r : log.rows) {
    locations = std::max(locations, r.location + 1);
    types = std::max(types, r.type);
  }
  return quantize_sensor_log(log, locations, types, bins);
}

}  // namespace ksub
