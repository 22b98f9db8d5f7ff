// Experiment configuration: one JSON document drives model, channel, block
// length, construction, codec and harness settings. Any scalar field may hold
// a list of values instead; each such list becomes a sweep axis and the
// config expands to the cartesian product in document order.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bits.hpp"
#include "codec.hpp"
#include "model.hpp"

namespace wompolar {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const Json* find(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline double need_number(const Json& j, const char* field) {
  const Json* v = find(j, field);
  if (!v || !v->is_number())
    throw ConfigError(std::string("field \"") + field + "\": expected a number");
  return v->get<double>();
}

inline double number_or(const Json& j, const char* field, double fallback) {
  const Json* v = find(j, field);
  if (!v) return fallback;
  if (!v->is_number())
    throw ConfigError(std::string("field \"") + field + "\": expected a number");
  return v->get<double>();
}

inline std::uint64_t unsigned_or(const Json& j, const char* field, std::uint64_t fallback) {
  const Json* v = find(j, field);
  if (!v) return fallback;
  if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0))
    throw ConfigError(std::string("field \"") + field + "\": expected a nonnegative integer");
  return v->get<std::uint64_t>();
}

}  // namespace detail

struct ChannelSpec {
  std::string kind;  // "identity" | "bsc" | "bac" | "matrix"
  double p = 0.0;
  double p01 = 0.0, p10 = 0.0;
  std::vector<std::vector<double>> rows;

  static ChannelSpec parse(const Json& j) {
    ChannelSpec spec;
    const Json* kind = detail::find(j, "kind");
    if (!kind || !kind->is_string())
      throw ConfigError("field \"channel.kind\": expected one of identity|bsc|bac|matrix");
    spec.kind = kind->get<std::string>();
    if (spec.kind == "identity") {
    } else if (spec.kind == "bsc") {
      spec.p = detail::need_number(j, "p");
    } else if (spec.kind == "bac") {
      spec.p01 = detail::need_number(j, "p01");
      spec.p10 = detail::need_number(j, "p10");
    } else if (spec.kind == "matrix") {
      const Json* rows = detail::find(j, "rows");
      if (!rows || !rows->is_array() || rows->size() != 2)
        throw ConfigError("field \"channel.rows\": expected 2 rows");
      for (const auto& row : *rows) {
        if (!row.is_array()) throw ConfigError("field \"channel.rows\": expected rows of numbers");
        spec.rows.push_back(row.get<std::vector<double>>());
      }
    } else {
      throw ConfigError("field \"channel.kind\": unknown kind \"" + spec.kind + "\"");
    }
    return spec;
  }

  ReadChannel build() const {
    if (kind == "identity") return ReadChannel::identity();
    if (kind == "bsc") return ReadChannel::bsc(p);
    if (kind == "bac") return ReadChannel::bac(p01, p10);
    return ReadChannel::from_matrix(rows);
  }
};

struct ExperimentConfig {
  double beta = 0.5, gamma = 0.5;
  ChannelSpec channel;
  std::size_t n = 0;
  std::uint64_t construction_m = 10000;
  double threshold_high = 0.9, threshold_low = 0.1;
  std::uint64_t construction_seed = 1;
  std::string freeze_policy = "zeros";  // "zeros" or an explicit bit string
  std::uint64_t trials = 100;
  std::uint64_t harness_seed = 1;
  Json echo;  // the resolved document this config was parsed from

  WomSourceModel model() const { return {beta, gamma}; }

  FreezeBits freeze_bits(std::size_t count) const {
    if (freeze_policy == "zeros") return FreezeBits(count, 0);
    FreezeBits bits = parse_bits(freeze_policy);
    if (bits.size() != count)
      throw ConfigError("field \"codec.freeze\": bit string length must equal |G|");
    return bits;
  }

  static ExperimentConfig parse(const Json& doc) {
    ExperimentConfig c;
    c.echo = doc;
    c.beta = detail::need_number(doc, "beta");
    c.gamma = detail::need_number(doc, "gamma");
    if (!(c.beta > 0.0 && c.beta < 1.0)) throw ConfigError("field \"beta\": must lie in (0,1)");
    if (!(c.gamma > 0.0 && c.gamma < 1.0)) throw ConfigError("field \"gamma\": must lie in (0,1)");

    const Json* ch = detail::find(doc, "channel");
    if (!ch || !ch->is_object()) throw ConfigError("field \"channel\": expected an object");
    c.channel = ChannelSpec::parse(*ch);

    const double n = detail::need_number(doc, "N");
    if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n)) ||
        !is_pow2(static_cast<std::size_t>(n)))
      throw ConfigError("field \"N\": must be a power of two");
    c.n = static_cast<std::size_t>(n);

    if (const Json* cons = detail::find(doc, "construction")) {
      if (!cons->is_object()) throw ConfigError("field \"construction\": expected an object");
      c.construction_m = detail::unsigned_or(*cons, "M", c.construction_m);
      if (c.construction_m < 1) throw ConfigError("field \"construction.M\": must be >= 1");
      c.threshold_high = detail::number_or(*cons, "threshold_high", c.threshold_high);
      c.threshold_low = detail::number_or(*cons, "threshold_low", c.threshold_low);
      if (!(c.threshold_low >= 0.0 && c.threshold_low <= c.threshold_high &&
            c.threshold_high <= 1.0))
        throw ConfigError("field \"construction.threshold_low\": need 0 <= low <= high <= 1");
      c.construction_seed = detail::unsigned_or(*cons, "seed", c.construction_seed);
    }

    if (const Json* codec = detail::find(doc, "codec")) {
      if (!codec->is_object()) throw ConfigError("field \"codec\": expected an object");
      if (const Json* fr = detail::find(*codec, "freeze")) {
        if (!fr->is_string())
          throw ConfigError("field \"codec.freeze\": expected \"zeros\" or a bit string");
        c.freeze_policy = fr->get<std::string>();
      }
    }

    if (const Json* h = detail::find(doc, "harness")) {
      if (!h->is_object()) throw ConfigError("field \"harness\": expected an object");
      c.trials = detail::unsigned_or(*h, "trials", c.trials);
      if (c.trials < 1) throw ConfigError("field \"harness.trials\": must be >= 1");
      c.harness_seed = detail::unsigned_or(*h, "seed", c.harness_seed);
    }
    return c;
  }
};

struct SweepAxis {
  std::string path;  // dotted field path, e.g. "channel.p"
  Json values;       // the list found at that path
};

namespace detail {

inline bool is_scalar_list(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& e : v)
    if (!e.is_primitive() || e.is_null()) return false;
  return true;
}

inline void collect_axes(const Json& node, const std::string& prefix, std::vector<SweepAxis>& out) {
  if (!node.is_object()) return;
  for (const auto& [key, value] : node.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (is_scalar_list(value))
      out.push_back({path, value});
    else
      collect_axes(value, path, out);
  }
}

inline void set_path(Json& doc, const std::string& path, const Json& value) {
  Json* cur = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (dot == std::string::npos) {
      (*cur)[key] = value;
      return;
    }
    cur = &(*cur)[key];
    start = dot + 1;
  }
}

}  // namespace detail

struct SweepExpansion {
  std::vector<SweepAxis> axes;        // document order
  std::vector<Json> resolved;         // one document per grid point
  std::vector<std::vector<Json>> axis_values;  // per point, aligned with axes
};

// every scalar list in the document becomes an axis; points are emitted in
// row-major order over the axes as they appear in the document
inline SweepExpansion expand_sweeps(const Json& doc) {
  SweepExpansion out;
  detail::collect_axes(doc, "", out.axes);
  std::size_t total = 1;
  for (const auto& axis : out.axes) total *= axis.values.size();
  out.resolved.reserve(total);
  out.axis_values.reserve(total);
  for (std::size_t point = 0; point < total; ++point) {
    Json resolved = doc;
    std::vector<Json> vals(out.axes.size());
    std::size_t rem = point;
    for (std::size_t a = out.axes.size(); a-- > 0;) {
      const auto& axis = out.axes[a];
      const std::size_t idx = rem % axis.values.size();
      rem /= axis.values.size();
      vals[a] = axis.values[idx];
      detail::set_path(resolved, axis.path, axis.values[idx]);
    }
    out.resolved.push_back(std::move(resolved));
    out.axis_values.push_back(std::move(vals));
  }
  return out;
}

}  // namespace wompolar
