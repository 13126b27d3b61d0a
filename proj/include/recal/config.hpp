#pragma once

// Pipeline configuration document (JSON, schema "recal-config/1").
//
//   {
//     "schema": "recal-config/1",
//     "disciplines": [{"key": "geology", "name": "Geology"}, ...],
//     "domestic_language": "hu",
//     "pub_window": [2014, 2018],
//     "citation_window": [2014, 2019],
//     "indicators": ["publications", ...],          // kinds in indicator exports
//     "publication_types": null | ["journal_article", ...],
//     "minimums": {"geology": {"publications": 30, ...}, ...},
//     "recalibration": {
//       "kinds": [...], "top_fraction": 0.25, "t": {"publications": 5, ...},
//       "ym_source_method": "integer", "rounding": "half_away_from_zero",
//       "ym_decimals": null | 3
//     },
//     "derived_base": {"first_author_publications": "publications", ...},
//     "output": {"dir": "out", "formats": ["dsv", "json"]}
//   }
//
// Current minimums of recalibrated kinds feed the recalibration; minimums of
// kinds listed in derived_base are scaled from their base kind.

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "recal/counting.hpp"
#include "recal/dsv.hpp"
#include "recal/earth_sciences.hpp"
#include "recal/recalibration.hpp"
#include "recal/registry.hpp"
#include "recal/synthgen.hpp"
#include "recal/threshold.hpp"

namespace recal {

inline constexpr const char* kConfigSchema = "recal-config/1";

struct OutputFormats {
  bool dsv = true;
  bool json = false;
};

struct PipelineConfig {
  DisciplineRegistry registry;
  Windows windows;
  CountingOptions counting;
  std::vector<IndicatorKind> indicators;
  ThresholdTable minimums;
  RecalibrationConfig recalibration;
  std::map<IndicatorKind, IndicatorKind> derived_base;
  std::string output_dir = "out";
  OutputFormats formats;

  std::map<CellKey, double> derived_cmv() const {
    std::map<CellKey, double> out;
    for (const auto& [key, v] : minimums.minimums)
      if (derived_base.count(key.kind)) out[key] = v;
    return out;
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ValidationError("unknown key '" + k + "' in " + where);
}

inline std::vector<IndicatorKind> kinds_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + " must be an array of indicator kinds");
  std::vector<IndicatorKind> out;
  for (const auto& e : j) {
    auto k = kind_or_throw(e.get<std::string>());
    if (std::find(out.begin(), out.end(), k) != out.end())
      throw ValidationError("duplicate kind in " + where);
    out.push_back(k);
  }
  return out;
}

}  // namespace detail

inline PipelineConfig config_from_json(const nlohmann::json& j) {
  using detail::reject_unknown_keys;
  try {
    reject_unknown_keys(j,
                        {"schema", "disciplines", "domestic_language", "pub_window", "citation_window",
                         "indicators", "publication_types", "minimums", "recalibration",
                         "derived_base", "output"},
                        "config");
    if (j.value("schema", std::string()) != kConfigSchema)
      throw ValidationError(std::string("config must declare schema \"") + kConfigSchema + "\"");

    PipelineConfig c;
    std::vector<DisciplineRegistry::Entry> entries;
    for (const auto& e : j.at("disciplines")) {
      reject_unknown_keys(e, {"key", "name"}, "disciplines entry");
      auto key = e.at("key").get<std::string>();
      entries.push_back({DisciplineId(key), e.value("name", key)});
    }
    c.registry = DisciplineRegistry(std::move(entries));

    c.counting.domestic_language = j.value("domestic_language", std::string("hu"));
    c.windows.pub_window = year_range_from_json(j.at("pub_window"), "pub_window");
    c.windows.citation_window = year_range_from_json(j.at("citation_window"), "citation_window");
    if (c.windows.pub_window.empty() || c.windows.citation_window.empty())
      throw ValidationError("config windows must be non-empty");

    c.indicators = j.contains("indicators")
                       ? detail::kinds_from_json(j["indicators"], "indicators")
                       : std::vector<IndicatorKind>(kCoreKinds.begin(), kCoreKinds.end());
    if (j.contains("publication_types") && !j["publication_types"].is_null()) {
      std::vector<PubType> types;
      for (const auto& t : j["publication_types"]) {
        auto pt = parse_pub_type(t.get<std::string>());
        if (!pt) throw ValidationError("unknown publication type '" + t.get<std::string>() + "'");
        types.push_back(*pt);
      }
      c.counting.publication_types = std::move(types);
    }

    c.minimums.label = "current minimum values";
    for (const auto& [disc, kinds] : j.at("minimums").items()) {
      DisciplineId d(disc);
      if (!c.registry.contains(d)) throw ValidationError("minimums: unknown discipline '" + disc + "'");
      for (const auto& [kind, v] : kinds.items()) c.minimums.set(d, kind_or_throw(kind), v.get<double>());
    }

    const auto& r = j.at("recalibration");
    reject_unknown_keys(r, {"kinds", "top_fraction", "t", "ym_source_method", "rounding", "ym_decimals"},
                        "recalibration");
    auto& rc = c.recalibration;
    if (r.contains("kinds")) rc.kinds = detail::kinds_from_json(r["kinds"], "recalibration.kinds");
    rc.top_fraction = r.value("top_fraction", rc.top_fraction);
    if (r.contains("t")) {
      rc.t.clear();
      for (const auto& [kind, v] : r["t"].items()) rc.t[kind_or_throw(kind)] = v.get<double>();
    }
    rc.ym_source_method = method_or_throw(r.value("ym_source_method", std::string("integer")));
    rc.rounding = rounding_or_throw(r.value("rounding", std::string("half_away_from_zero")));
    if (r.contains("ym_decimals") && !r["ym_decimals"].is_null()) rc.ym_decimals = r["ym_decimals"].get<int>();
    for (const auto& e : c.registry.entries())
      for (auto k : rc.kinds)
        if (auto v = c.minimums.get(e.id, k)) rc.cmv[{e.id, k}] = *v;
    rc.validate(c.registry);

    if (j.contains("derived_base")) {
      for (const auto& [kind, base] : j["derived_base"].items()) {
        auto bk = kind_or_throw(base.get<std::string>());
        if (std::find(rc.kinds.begin(), rc.kinds.end(), bk) == rc.kinds.end())
          throw ValidationError("derived_base: base kind " + base.get<std::string>() + " is not recalibrated");
        c.derived_base[kind_or_throw(kind)] = bk;
      }
    } else {
      c.derived_base = default_base_kinds();
    }

    if (j.contains("output")) {
      const auto& o = j["output"];
      reject_unknown_keys(o, {"dir", "formats"}, "output");
      c.output_dir = o.value("dir", c.output_dir);
      if (o.contains("formats")) {
        c.formats = {false, false};
        for (const auto& f : o["formats"]) {
          auto s = f.get<std::string>();
          if (s == "dsv") c.formats.dsv = true;
          else if (s == "json") c.formats.json = true;
          else throw ValidationError("unknown output format '" + s + "'");
        }
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

inline nlohmann::ordered_json config_to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["schema"] = kConfigSchema;
  auto discs = nlohmann::ordered_json::array();
  for (const auto& e : c.registry.entries()) discs.push_back({{"key", e.id.key()}, {"name", e.display_name}});
  j["disciplines"] = discs;
  j["domestic_language"] = c.counting.domestic_language;
  j["pub_window"] = {c.windows.pub_window.first, c.windows.pub_window.last};
  j["citation_window"] = {c.windows.citation_window.first, c.windows.citation_window.last};
  auto kinds_json = [](const std::vector<IndicatorKind>& ks) {
    auto a = nlohmann::ordered_json::array();
    for (auto k : ks) a.push_back(to_string(k));
    return a;
  };
  j["indicators"] = kinds_json(c.indicators);
  if (c.counting.publication_types) {
    auto a = nlohmann::ordered_json::array();
    for (auto t : *c.counting.publication_types) a.push_back(to_string(t));
    j["publication_types"] = a;
  } else {
    j["publication_types"] = nullptr;
  }
  nlohmann::ordered_json mins = nlohmann::ordered_json::object();
  for (const auto& e : c.registry.entries()) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (auto k : kAllKinds)
      if (auto v = c.minimums.get(e.id, k)) row[std::string(to_string(k))] = *v;
    mins[e.id.key()] = row;
  }
  j["minimums"] = mins;
  const auto& rc = c.recalibration;
  nlohmann::ordered_json r;
  r["kinds"] = kinds_json(rc.kinds);
  r["top_fraction"] = rc.top_fraction;
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (auto k : rc.kinds) t[std::string(to_string(k))] = rc.horizon(k);
  r["t"] = t;
  r["ym_source_method"] = to_string(rc.ym_source_method);
  r["rounding"] = to_string(rc.rounding);
  r["ym_decimals"] = rc.ym_decimals ? nlohmann::ordered_json(*rc.ym_decimals) : nlohmann::ordered_json();
  j["recalibration"] = r;
  nlohmann::ordered_json db = nlohmann::ordered_json::object();
  for (const auto& [k, b] : c.derived_base) db[std::string(to_string(k))] = to_string(b);
  j["derived_base"] = db;
  auto formats = nlohmann::ordered_json::array();
  if (c.formats.dsv) formats.push_back("dsv");
  if (c.formats.json) formats.push_back("json");
  j["output"] = {{"dir", c.output_dir}, {"formats", formats}};
  return j;
}

inline PipelineConfig load_config(const std::string& path) {
  auto text = dsv::read_file(path);
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("config '" + path + "' is not valid JSON");
  return config_from_json(j);
}

/// The earth-sciences setting with Y_m rounded to 3 decimals, as the
/// published recalibration tables do.
inline PipelineConfig default_config() {
  PipelineConfig c;
  c.registry = earth_sciences::registry();
  c.indicators.assign(kAllKinds.begin(), kAllKinds.end());
  c.minimums = earth_sciences::current_minimums();
  c.recalibration = earth_sciences::recalibration_config();
  c.recalibration.ym_decimals = 3;
  c.derived_base = default_base_kinds();
  return c;
}

}  // namespace recal
