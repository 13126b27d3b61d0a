#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "recal/counting.hpp"
#include "recal/threshold.hpp"

namespace recal {

struct IndicatorScore {
  IndicatorKind kind = IndicatorKind::publications;
  double value = 0;
  double minimum = 0;
  bool fulfilled = false;
  double score = 0;  // value / minimum, uncapped
};

struct EvaluationResult {
  std::string researcher_id;
  DisciplineId discipline;
  CountingMethod method = CountingMethod::integer;
  std::vector<IndicatorScore> indicators;  // kinds required by the table, enum order
  bool overall_fulfilled = false;
};

/// Scores a candidate against every minimum the table sets for the
/// discipline. Kinds absent from the table are ignored.
inline EvaluationResult evaluate_candidate(const IndicatorVector& vector, const DisciplineId& discipline,
                                           const ThresholdTable& table) {
  auto kinds = table.kinds_for(discipline);
  if (kinds.empty())
    throw LookupError("threshold table '" + table.label + "' has no minimums for discipline '" +
                      discipline.key() + "'");
  EvaluationResult res{vector.researcher_id, discipline, vector.method, {}, true};
  for (auto k : kinds) {
    auto v = vector.value(k);
    if (!v)
      throw ValidationError("indicator vector of '" + vector.researcher_id + "' lacks required kind " +
                            std::string(to_string(k)));
    double minimum = *table.get(discipline, k);
    IndicatorScore s{k, *v, minimum, *v >= minimum, *v / minimum};
    res.overall_fulfilled = res.overall_fulfilled && s.fulfilled;
    res.indicators.push_back(s);
  }
  return res;
}

inline nlohmann::ordered_json evaluation_to_json(const EvaluationResult& r, const std::string& table_label) {
  nlohmann::ordered_json j;
  j["researcher_id"] = r.researcher_id;
  j["discipline"] = r.discipline.key();
  j["method"] = to_string(r.method);
  j["thresholds"] = table_label;
  j["overall_fulfilled"] = r.overall_fulfilled;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : r.indicators) {
    nlohmann::ordered_json e;
    e["kind"] = to_string(s.kind);
    e["value"] = s.value;
    e["minimum"] = s.minimum;
    e["fulfilled"] = s.fulfilled;
    e["score"] = s.score;
    arr.push_back(std::move(e));
  }
  j["indicators"] = std::move(arr);
  return j;
}

enum class CellChange { changed, added, removed };

inline std::string_view to_string(CellChange c) {
  switch (c) {
    case CellChange::changed: return "changed";
    case CellChange::added: return "added";
    case CellChange::removed: return "removed";
  }
  return "?";
}

struct CellDelta {
  CellChange change = CellChange::changed;
  std::optional<double> before;
  std::optional<double> after;

  // after - before, present only for cells in both tables.
  std::optional<double> delta() const {
    if (!before || !after) return std::nullopt;
    return *after - *before;
  }
};

/// b - a per cell. Cells only in b are "added", cells only in a "removed".
inline std::map<CellKey, CellDelta> diff_tables(const ThresholdTable& a, const ThresholdTable& b) {
  std::map<CellKey, CellDelta> out;
  for (const auto& [key, v] : a.minimums) {
    auto other = b.minimums.find(key);
    if (other == b.minimums.end())
      out[key] = {CellChange::removed, v, std::nullopt};
    else
      out[key] = {CellChange::changed, v, other->second};
  }
  for (const auto& [key, v] : b.minimums)
    if (!a.minimums.count(key)) out[key] = {CellChange::added, std::nullopt, v};
  return out;
}

inline std::string diff_to_dsv(const std::map<CellKey, CellDelta>& diff) {
  std::string out = dsv::join_row({"discipline", "kind", "before", "after", "delta", "change"});
  auto num = [](std::optional<double> v) { return v ? dsv::shortest(*v) : std::string(); };
  for (const auto& [key, d] : diff)
    out += dsv::join_row({key.discipline.key(), std::string(to_string(key.kind)), num(d.before),
                          num(d.after), num(d.delta()), std::string(to_string(d.change))});
  return out;
}

}  // namespace recal
