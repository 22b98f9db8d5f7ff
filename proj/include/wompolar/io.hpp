// File formats: profiles and partitions as JSON (indices 1-based on disk),
// bit blocks as newline-free ASCII 0/1 strings, observations as
// space-separated symbol indices, reports as JSON plus flat CSV. All writers
// are deterministic functions of their inputs.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bits.hpp"
#include "config.hpp"
#include "construction.hpp"
#include "sim.hpp"

namespace wompolar {

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// json parse with a line-anchored error message
inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t upto = e.byte < text.size() ? e.byte : text.size();
    for (std::size_t i = 0; i < upto; ++i)
      if (text[i] == '\n') ++line;
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + e.what());
  }
}

inline Json load_json_file(const std::string& path) {
  return parse_json_text(read_text_file(path), path);
}

inline const char* side_info_name(SideInfoKind kind) {
  return kind == SideInfoKind::State ? "STATE" : "OBSERVATION";
}

inline Json profile_to_json(const EntropyProfile& prof) {
  Json j;
  j["N"] = prof.n;
  j["M"] = prof.samples;
  j["side_info_kind"] = side_info_name(prof.kind);
  j["seed"] = prof.seed;
  j["values"] = prof.values;
  return j;
}

inline EntropyProfile profile_from_json(const Json& j) {
  EntropyProfile prof;
  prof.n = j.at("N").get<std::size_t>();
  prof.samples = j.at("M").get<std::uint64_t>();
  const std::string kind = j.at("side_info_kind").get<std::string>();
  if (kind == "STATE")
    prof.kind = SideInfoKind::State;
  else if (kind == "OBSERVATION")
    prof.kind = SideInfoKind::Observation;
  else
    throw std::runtime_error("profile: side_info_kind must be STATE or OBSERVATION");
  prof.seed = j.at("seed").get<std::uint64_t>();
  prof.values = j.at("values").get<std::vector<double>>();
  if (prof.values.size() != prof.n) throw std::runtime_error("profile: values length != N");
  return prof;
}

// partitions are stored 1-based to match written-out index conventions
inline Json partition_to_json(const IndexPartition& part) {
  auto up = [](const std::vector<std::uint32_t>& v) {
    std::vector<std::uint32_t> out;
    out.reserve(v.size());
    for (auto i : v) out.push_back(i + 1);
    return out;
  };
  Json j;
  j["N"] = part.n;
  j["thresholds"] = {part.threshold_high, part.threshold_low};
  j["F"] = up(part.f);
  j["G"] = up(part.g);
  return j;
}

inline IndexPartition partition_from_json(const Json& j) {
  IndexPartition part;
  part.n = j.at("N").get<std::size_t>();
  const auto th = j.at("thresholds").get<std::vector<double>>();
  if (th.size() != 2) throw std::runtime_error("partition: thresholds must be [high, low]");
  part.threshold_high = th[0];
  part.threshold_low = th[1];
  auto down = [&](const char* key) {
    std::vector<std::uint32_t> out;
    for (auto i : j.at(key).get<std::vector<std::uint32_t>>()) {
      if (i < 1 || i > part.n)
        throw std::runtime_error(std::string("partition: ") + key + " index out of range");
      out.push_back(i - 1);
    }
    return out;
  };
  part.f = down("F");
  part.g = down("G");
  return part;
}

inline void write_bits_file(const std::string& path, const BitBlock& bits) {
  write_text_file(path, format_bits(bits));
}

inline BitBlock read_bits_file(const std::string& path) {
  return parse_bits(read_text_file(path));
}

inline void write_symbols_file(const std::string& path, const std::vector<std::uint32_t>& y) {
  std::string out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(y[i]);
  }
  write_text_file(path, out);
}

inline std::vector<std::uint32_t> read_symbols_file(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::uint32_t> out;
  long long v;
  while (in >> v) {
    if (v < 0) throw std::runtime_error(path + ": negative symbol index");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// shortest-round-trip formatting, identical to JSON number output
inline std::string number_text(double v) { return Json(v).dump(); }

inline Json report_to_json(const ExperimentReport& rep) {
  Json j;
  j["trials"] = rep.trials;
  j["design_rate"] = rep.design_rate;
  j["frame_error_rate"] = rep.frame_error_rate;
  j["fer_ci95"] = {rep.fer_ci_lo, rep.fer_ci_hi};
  j["bit_error_rate"] = rep.bit_error_rate;
  j["mean_write_fraction"] = rep.mean_write_fraction;
  j["violation_rate"] = rep.violation_rate;
  j["violation_cell_rate"] = rep.violation_cell_rate;
  j["containment_holds"] = rep.containment_holds;
  j["less_noisy_margin"] = rep.less_noisy_margin;
  j["small_sample"] = rep.small_sample;
  return j;
}

// one row per sweep point: axis columns first, then the metric columns
inline std::string reports_to_csv(const std::vector<SweepAxis>& axes,
                                  const std::vector<std::vector<Json>>& axis_values,
                                  const std::vector<ExperimentReport>& reports) {
  std::string csv;
  for (const auto& axis : axes) csv += axis.path + ",";
  csv +=
      "design_rate,frame_error_rate,fer_ci_lo,fer_ci_hi,bit_error_rate,"
      "mean_write_fraction,violation_rate,violation_cell_rate,containment_holds,"
      "less_noisy_margin,trials\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const auto& v : axis_values[i])
      csv += (v.is_string() ? v.get<std::string>() : v.dump()) + ",";
    const ExperimentReport& r = reports[i];
    csv += number_text(r.design_rate) + "," + number_text(r.frame_error_rate) + "," +
           number_text(r.fer_ci_lo) + "," + number_text(r.fer_ci_hi) + "," +
           number_text(r.bit_error_rate) + "," + number_text(r.mean_write_fraction) + "," +
           number_text(r.violation_rate) + "," + number_text(r.violation_cell_rate) + "," +
           (r.containment_holds ? "true" : "false") + "," + number_text(r.less_noisy_margin) +
           "," + std::to_string(r.trials) + "\n";
  }
  return csv;
}

}  // namespace wompolar
