#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recal/dsv.hpp"
#include "recal/types.hpp"

namespace recal {

/// Key of one (discipline, indicator) cell.
struct CellKey {
  DisciplineId discipline;
  IndicatorKind kind = IndicatorKind::publications;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

/// Per-discipline minimum values. Absent cells are not required.
struct ThresholdTable {
  std::string label;
  std::map<CellKey, double> minimums;

  void set(const DisciplineId& d, IndicatorKind k, double v) {
    if (!(v > 0))
      throw ValidationError("minimum for " + d.key() + "/" + std::string(to_string(k)) +
                            " must be positive");
    minimums[{d, k}] = v;
  }

  std::optional<double> get(const DisciplineId& d, IndicatorKind k) const {
    auto it = minimums.find({d, k});
    if (it == minimums.end()) return std::nullopt;
    return it->second;
  }

  // Required kinds of one discipline in enum order.
  std::vector<IndicatorKind> kinds_for(const DisciplineId& d) const {
    std::vector<IndicatorKind> out;
    for (const auto& [key, v] : minimums)
      if (key.discipline == d) out.push_back(key.kind);
    return out;
  }
};

// File layout: a `label,<text>` line, then `discipline,kind,minimum` rows
// under a header.
inline std::string threshold_table_to_dsv(const ThresholdTable& t) {
  std::string out = dsv::join_row({"label", t.label});
  out += dsv::join_row({"discipline", "kind", "minimum"});
  for (const auto& [key, v] : t.minimums)
    out += dsv::join_row({key.discipline.key(), std::string(to_string(key.kind)), dsv::shortest(v)});
  return out;
}

inline ThresholdTable threshold_table_from_dsv(std::string_view text) {
  ThresholdTable t;
  auto nl = text.find('\n');
  auto first = dsv::split_line(text.substr(0, nl));
  if (first.size() < 2 || first[0] != "label")
    throw ValidationError("threshold table must start with a 'label,<text>' line");
  t.label = first[1];
  if (nl == std::string_view::npos) return t;
  auto table = dsv::parse(text.substr(nl + 1));
  auto cd = table.column("discipline"), ck = table.column("kind"), cm = table.column("minimum");
  if (cd == dsv::Table::npos || ck == dsv::Table::npos || cm == dsv::Table::npos)
    throw ValidationError("threshold table header must be discipline,kind,minimum");
  for (const auto& row : table.rows) {
    auto where = "threshold table line " + std::to_string(row.line + 1) + ": ";
    if (row.fields.size() != table.header.size())
      throw ValidationError(where + "wrong number of fields");
    auto kind = parse_kind(row.fields[ck]);
    if (!kind) throw ValidationError(where + "unknown indicator kind '" + row.fields[ck] + "'");
    auto v = dsv::parse_double(row.fields[cm]);
    if (!v || !(*v > 0)) throw ValidationError(where + "minimum must be a positive number");
    DisciplineId d(row.fields[cd]);
    if (t.get(d, *kind)) throw ValidationError(where + "duplicate cell");
    t.set(d, *kind, *v);
  }
  return t;
}

}  // namespace recal
