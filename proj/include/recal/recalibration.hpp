#pragma once

// Recalibration of minimum indicator values.
//
// For every discipline i and indicator, with current minimum CMV_i, actual
// performance APV_i (mean of the top quartile of researchers) and data
// horizon t:
//
//   Y_i     = CMV_i / APV_i * t          years to reach the current minimum
//   Y_m     = mean of Y_i over disciplines (integer counting by default)
//   R_y,i   = Y_m / Y_i
//   RMV_i   = CMV_i * R_y,i  (= APV_i * Y_m / t)
//
// so every discipline needs Y_m years to reach its recalibrated minimum, and
// the RMV shares across disciplines equal the APV shares.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recal/corpus.hpp"
#include "recal/counting.hpp"
#include "recal/dsv.hpp"
#include "recal/threshold.hpp"

namespace recal {

enum class RoundingMode { half_away_from_zero, none };

inline std::string_view to_string(RoundingMode m) {
  return m == RoundingMode::none ? "none" : "half_away_from_zero";
}

inline RoundingMode rounding_or_throw(std::string_view s) {
  if (s == "none") return RoundingMode::none;
  if (s == "half_away_from_zero") return RoundingMode::half_away_from_zero;
  throw ValidationError("unknown rounding mode '" + std::string(s) + "'");
}

struct RecalibrationConfig {
  double top_fraction = 0.25;
  std::vector<IndicatorKind> kinds{kCoreKinds.begin(), kCoreKinds.end()};
  std::map<IndicatorKind, double> t = {{IndicatorKind::publications, 5.0},
                                       {IndicatorKind::wos_articles, 5.0},
                                       {IndicatorKind::independent_citations, 5.0},
                                       {IndicatorKind::cumulative_if, 5.0}};
  std::map<CellKey, double> cmv;
  CountingMethod ym_source_method = CountingMethod::integer;
  RoundingMode rounding = RoundingMode::half_away_from_zero;
  // When set, Y_m is rounded to this many decimals before it is applied.
  std::optional<int> ym_decimals;

  double horizon(IndicatorKind k) const {
    auto it = t.find(k);
    if (it == t.end())
      throw LookupError("no time horizon configured for " + std::string(to_string(k)));
    return it->second;
  }

  double current_minimum(const DisciplineId& d, IndicatorKind k) const {
    auto it = cmv.find({d, k});
    if (it == cmv.end())
      throw LookupError("missing current minimum for " + d.key() + "/" +
                        std::string(to_string(k)));
    return it->second;
  }

  void validate(const DisciplineRegistry& registry) const {
    if (!(top_fraction > 0 && top_fraction <= 1))
      throw ValidationError("top_fraction must lie in (0, 1]");
    if (ym_decimals && (*ym_decimals < 0 || *ym_decimals > 12))
      throw ValidationError("ym_decimals must lie in [0, 12]");
    for (auto k : kCoreKinds)
      if (std::find(kinds.begin(), kinds.end(), k) == kinds.end())
        throw ValidationError("core indicator " + std::string(to_string(k)) +
                              " must be recalibrated");
    for (auto k : kinds) {
      if (!(horizon(k) > 0))
        throw ValidationError("time horizon for " + std::string(to_string(k)) + " must be > 0");
      for (const auto& e : registry.entries())
        if (!(current_minimum(e.id, k) > 0))
          throw ValidationError("current minimum for " + e.id.key() + "/" +
                                std::string(to_string(k)) + " must be > 0");
    }
  }
};

struct DisciplinePerformance {
  DisciplineId discipline;
  IndicatorKind kind = IndicatorKind::publications;
  CountingMethod method = CountingMethod::integer;
  double apv = 0.0;
  std::size_t population = 0;
  std::size_t selected = 0;
};

struct ApvKey {
  DisciplineId discipline;
  IndicatorKind kind = IndicatorKind::publications;
  CountingMethod method = CountingMethod::integer;

  friend auto operator<=>(const ApvKey&, const ApvKey&) = default;
};

using ApvTable = std::map<ApvKey, DisciplinePerformance>;

struct ResearcherValue {
  std::string researcher_id;
  double value = 0.0;
};

struct TopSelection {
  double apv = 0.0;
  std::size_t selected = 0;
};

inline std::size_t top_count(std::size_t population, double top_fraction) {
  // The small epsilon keeps products such as 0.29 * 100 from flooring to 28.
  auto k = static_cast<std::size_t>(std::floor(top_fraction * static_cast<double>(population) + 1e-9));
  return std::max<std::size_t>(k, 1);
}

/// Mean of the best floor(top_fraction * n) values (at least one). Ties are
/// ordered by ascending researcher id.
inline TopSelection top_quartile_apv(std::vector<ResearcherValue> values, double top_fraction = 0.25) {
  if (values.empty()) throw ValidationError("top-quartile selection over an empty population");
  if (!(top_fraction > 0 && top_fraction <= 1))
    throw ValidationError("top_fraction must lie in (0, 1]");
  std::sort(values.begin(), values.end(), [](const ResearcherValue& a, const ResearcherValue& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.researcher_id < b.researcher_id;
  });
  auto k = top_count(values.size(), top_fraction);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += values[i].value;
  return {sum / static_cast<double>(k), k};
}

inline TopSelection top_quartile_apv(const std::vector<double>& values, double top_fraction = 0.25) {
  std::vector<ResearcherValue> rv;
  rv.reserve(values.size());
  for (double v : values) rv.push_back({"", v});
  return top_quartile_apv(std::move(rv), top_fraction);
}

inline double years_to_fulfill(double cmv, double apv, double t) {
  if (!(cmv > 0) || !(t > 0)) throw ValidationError("years_to_fulfill needs cmv > 0 and t > 0");
  if (!(apv > 0))
    throw DegenerateDisciplineError("", "actual performance value is zero; minimum is never reached");
  return cmv / apv * t;
}

// Values keyed by discipline, kept in registry order.
using DisciplineValues = std::vector<std::pair<DisciplineId, double>>;

/// Each value's share of the total.
inline DisciplineValues dsdr(const DisciplineValues& values) {
  double sum = 0.0;
  for (const auto& [d, v] : values) {
    if (v < 0) throw ValidationError("negative value for " + d.key());
    sum += v;
  }
  if (!(sum > 0)) throw ValidationError("distance ratios of an all-zero series are undefined");
  DisciplineValues out;
  out.reserve(values.size());
  for (const auto& [d, v] : values) out.emplace_back(d, v / sum);
  return out;
}

inline double mean_years(const DisciplineValues& years) {
  if (years.empty()) throw ValidationError("mean over no disciplines");
  double sum = 0.0;
  for (const auto& [d, y] : years) sum += y;
  return sum / static_cast<double>(years.size());
}

inline double recalibrated_minimum(double cmv, double y_m, double y_i) {
  if (!(y_i > 0)) throw ValidationError("recalibrated_minimum needs y_i > 0");
  return cmv * (y_m / y_i);
}

/// Half-away-from-zero integer for count kinds and integer cumulative IF.
/// Fractional cumulative IF and RoundingMode::none stay unrounded (nullopt).
inline std::optional<long long> round_minimum(double raw, IndicatorKind kind, CountingMethod method,
                                              RoundingMode mode = RoundingMode::half_away_from_zero) {
  if (raw < 0) throw ValidationError("negative minimum");
  if (mode == RoundingMode::none) return std::nullopt;
  if (kind == IndicatorKind::cumulative_if && method == CountingMethod::fractional)
    return std::nullopt;
  return std::llround(raw);
}

struct RecalibrationRow {
  DisciplineId discipline;
  IndicatorKind kind = IndicatorKind::publications;
  CountingMethod method = CountingMethod::integer;
  double cmv = 0, apv = 0;
  double y_i = 0, y_m = 0, r_y = 0;
  double dsdr_current = 0, dsdr_actual = 0;
  double rmv_raw = 0;
  std::optional<long long> rmv_rounded;

  // Rounded value when one exists, otherwise the raw value.
  double presented() const { return rmv_rounded ? static_cast<double>(*rmv_rounded) : rmv_raw; }
};

namespace detail {

inline const DisciplinePerformance& apv_entry(const ApvTable& table, const DisciplineId& d,
                                              IndicatorKind k, CountingMethod m) {
  auto it = table.find({d, k, m});
  if (it == table.end())
    throw LookupError("no actual performance value for " + d.key() + "/" +
                      std::string(to_string(k)) + "/" + std::string(to_string(m)));
  return it->second;
}

inline double round_to(double v, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

}  // namespace detail

/// Rows ordered by configured kind, then method (integer, fractional), then
/// registry order. Throws DegenerateDisciplineError when any needed APV is 0.
inline std::vector<RecalibrationRow> recalibrate_all(const ApvTable& apvs,
                                                     const DisciplineRegistry& registry,
                                                     const RecalibrationConfig& config) {
  config.validate(registry);

  std::vector<std::string> degenerate;
  for (auto k : config.kinds)
    for (auto m : kAllMethods)
      for (const auto& e : registry.entries())
        if (!(detail::apv_entry(apvs, e.id, k, m).apv > 0))
          degenerate.push_back(e.id.key() + "/" + std::string(to_string(k)) + "/" +
                               std::string(to_string(m)));
  if (!degenerate.empty()) {
    std::string msg = "degenerate discipline(s) with zero actual performance:";
    for (const auto& d : degenerate) msg += " " + d;
    auto first = degenerate.front().substr(0, degenerate.front().find('/'));
    throw DegenerateDisciplineError(first, msg);
  }

  std::vector<RecalibrationRow> rows;
  for (auto k : config.kinds) {
    double t = config.horizon(k);

    DisciplineValues cmvs;
    for (const auto& e : registry.entries()) cmvs.emplace_back(e.id, config.current_minimum(e.id, k));
    auto current = dsdr(cmvs);

    DisciplineValues source_years;
    for (const auto& [d, cmv] : cmvs)
      source_years.emplace_back(
          d, years_to_fulfill(cmv, detail::apv_entry(apvs, d, k, config.ym_source_method).apv, t));
    double y_m = mean_years(source_years);
    if (config.ym_decimals) y_m = detail::round_to(y_m, *config.ym_decimals);

    for (auto m : kAllMethods) {
      DisciplineValues actual_in;
      for (const auto& e : registry.entries())
        actual_in.emplace_back(e.id, detail::apv_entry(apvs, e.id, k, m).apv);
      auto actual = dsdr(actual_in);
      for (std::size_t i = 0; i < cmvs.size(); ++i) {
        RecalibrationRow r;
        r.discipline = cmvs[i].first;
        r.kind = k;
        r.method = m;
        r.cmv = cmvs[i].second;
        r.apv = actual_in[i].second;
        r.y_i = years_to_fulfill(r.cmv, r.apv, t);
        r.y_m = y_m;
        r.r_y = y_m / r.y_i;
        r.dsdr_current = current[i].second;
        r.dsdr_actual = actual[i].second;
        r.rmv_raw = recalibrated_minimum(r.cmv, y_m, r.y_i);
        r.rmv_rounded = round_minimum(r.rmv_raw, k, m, config.rounding);
        rows.push_back(std::move(r));
      }
    }
  }
  return rows;
}

/// Top-quartile APVs per (discipline, kind, method) computed from a corpus.
/// Disciplines without researchers get apv 0 and population 0.
inline ApvTable compute_apv_table(const Corpus& corpus, const std::vector<IndicatorKind>& kinds,
                                  double top_fraction, const Windows& w,
                                  const CountingOptions& opt = {}) {
  ApvTable table;
  for (const auto& e : corpus.registry().entries()) {
    auto ids = corpus.researchers_in(e.id);
    for (auto k : kinds) {
      for (auto m : kAllMethods) {
        DisciplinePerformance perf{e.id, k, m, 0.0, ids.size(), 0};
        if (!ids.empty()) {
          std::vector<ResearcherValue> values;
          values.reserve(ids.size());
          for (const auto& id : ids) values.push_back({id, indicator_value(corpus, id, k, m, w, opt)});
          auto sel = top_quartile_apv(std::move(values), top_fraction);
          perf.apv = sel.apv;
          perf.selected = sel.selected;
        }
        table[{e.id, k, m}] = perf;
      }
    }
  }
  return table;
}

inline std::vector<RecalibrationRow> recalibrate_all(const Corpus& corpus,
                                                     const RecalibrationConfig& config,
                                                     const Windows& w,
                                                     const CountingOptions& opt = {}) {
  auto apvs = compute_apv_table(corpus, config.kinds, config.top_fraction, w, opt);
  return recalibrate_all(apvs, corpus.registry(), config);
}

inline const RecalibrationRow* find_row(const std::vector<RecalibrationRow>& rows,
                                        const DisciplineId& d, IndicatorKind k, CountingMethod m) {
  for (const auto& r : rows)
    if (r.discipline == d && r.kind == k && r.method == m) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Derived indicators scaled in proportion to a base indicator's RMV.

inline std::map<IndicatorKind, IndicatorKind> default_base_kinds() {
  return {{IndicatorKind::first_author_publications, IndicatorKind::publications},
          {IndicatorKind::publications_since_degree, IndicatorKind::publications},
          {IndicatorKind::books_and_monographs, IndicatorKind::publications},
          {IndicatorKind::foreign_language_publications, IndicatorKind::publications},
          {IndicatorKind::wos_articles_since_degree, IndicatorKind::wos_articles}};
}

struct DerivedRow {
  DisciplineId discipline;
  IndicatorKind kind = IndicatorKind::first_author_publications;
  IndicatorKind base_kind = IndicatorKind::publications;
  double base_cmv = 0, derived_cmv = 0, base_rmv_raw = 0;
  double rmv_raw = 0;
  std::optional<long long> rmv_rounded;
};

/// RMV_derived = RMV_base * CMV_derived / CMV_base for each derived cell.
inline std::vector<DerivedRow> derived_scaled_rows(
    const std::vector<RecalibrationRow>& base_rows, const std::map<CellKey, double>& derived_cmv,
    const std::map<IndicatorKind, IndicatorKind>& base_kind_of = default_base_kinds(),
    CountingMethod method = CountingMethod::integer,
    RoundingMode mode = RoundingMode::half_away_from_zero) {
  std::vector<DerivedRow> out;
  for (const auto& [cell, cmv] : derived_cmv) {
    auto b = base_kind_of.find(cell.kind);
    if (b == base_kind_of.end())
      throw LookupError("no base indicator for derived kind " + std::string(to_string(cell.kind)));
    const auto* base = find_row(base_rows, cell.discipline, b->second, method);
    if (!base)
      throw LookupError("missing base row " + cell.discipline.key() + "/" +
                        std::string(to_string(b->second)) + "/" + std::string(to_string(method)));
    DerivedRow r;
    r.discipline = cell.discipline;
    r.kind = cell.kind;
    r.base_kind = b->second;
    r.base_cmv = base->cmv;
    r.derived_cmv = cmv;
    r.base_rmv_raw = base->rmv_raw;
    r.rmv_raw = base->rmv_raw * cmv / base->cmv;
    r.rmv_rounded = round_minimum(r.rmv_raw, cell.kind, method, mode);
    out.push_back(std::move(r));
  }
  return out;
}

/// Derived minimums as a threshold table (rounded where a rounding applies).
inline ThresholdTable derived_scaled_minimums(
    const std::vector<RecalibrationRow>& base_rows, const std::map<CellKey, double>& derived_cmv,
    const std::map<IndicatorKind, IndicatorKind>& base_kind_of = default_base_kinds(),
    CountingMethod method = CountingMethod::integer,
    RoundingMode mode = RoundingMode::half_away_from_zero) {
  ThresholdTable t;
  t.label = "derived recalibrated minimums (" + std::string(to_string(method)) + ")";
  for (const auto& r : derived_scaled_rows(base_rows, derived_cmv, base_kind_of, method, mode)) {
    double v = r.rmv_rounded ? static_cast<double>(*r.rmv_rounded) : r.rmv_raw;
    if (v > 0) t.set(r.discipline, r.kind, v);
  }
  return t;
}

/// Full recalibrated table for one method: base RMVs plus derived rows.
/// Cells that round to zero are dropped since a zero minimum is no minimum.
inline ThresholdTable recalibrated_table(const std::vector<RecalibrationRow>& rows,
                                         const std::vector<DerivedRow>& derived,
                                         CountingMethod method, std::string label) {
  ThresholdTable t;
  t.label = std::move(label);
  for (const auto& r : rows)
    if (r.method == method && r.presented() > 0) t.set(r.discipline, r.kind, r.presented());
  for (const auto& r : derived) {
    double v = r.rmv_rounded ? static_cast<double>(*r.rmv_rounded) : r.rmv_raw;
    if (v > 0) t.set(r.discipline, r.kind, v);
  }
  return t;
}

// ---------------------------------------------------------------------------
// File formats

inline ApvTable apv_table_from_dsv(std::string_view text, const DisciplineRegistry* registry = nullptr) {
  auto table = dsv::parse(text);
  auto cd = table.column("discipline"), ck = table.column("kind"), cm = table.column("method"),
       ca = table.column("apv");
  if (cd == dsv::Table::npos || ck == dsv::Table::npos || cm == dsv::Table::npos ||
      ca == dsv::Table::npos)
    throw ValidationError("APV table header must contain discipline,kind,method,apv");
  ApvTable out;
  for (const auto& row : table.rows) {
    auto where = "APV table line " + std::to_string(row.line) + ": ";
    if (row.fields.size() != table.header.size()) throw ValidationError(where + "wrong number of fields");
    DisciplineId d(row.fields[cd]);
    if (registry && !registry->contains(d))
      throw ValidationError(where + "unknown discipline '" + d.key() + "'");
    auto k = parse_kind(row.fields[ck]);
    if (!k) throw ValidationError(where + "unknown indicator kind '" + row.fields[ck] + "'");
    auto m = parse_method(row.fields[cm]);
    if (!m) throw ValidationError(where + "unknown counting method '" + row.fields[cm] + "'");
    auto v = dsv::parse_double(row.fields[ca]);
    if (!v || *v < 0) throw ValidationError(where + "apv must be a non-negative number");
    if (!out.emplace(ApvKey{d, *k, *m}, DisciplinePerformance{d, *k, *m, *v, 0, 0}).second)
      throw ValidationError(where + "duplicate entry");
  }
  return out;
}

inline std::string apv_table_to_dsv(const ApvTable& apvs, const DisciplineRegistry& registry,
                                    const std::vector<IndicatorKind>& kinds) {
  std::string out =
      dsv::join_row({"discipline", "kind", "method", "apv", "population", "selected"});
  for (auto k : kinds)
    for (auto m : kAllMethods)
      for (const auto& e : registry.entries()) {
        auto it = apvs.find({e.id, k, m});
        if (it == apvs.end()) continue;
        const auto& p = it->second;
        out += dsv::join_row({e.id.key(), std::string(to_string(k)), std::string(to_string(m)),
                              dsv::fixed(p.apv, 6), std::to_string(p.population),
                              std::to_string(p.selected)});
      }
  return out;
}

inline std::string rows_to_dsv(const std::vector<RecalibrationRow>& rows) {
  std::string out = dsv::join_row({"discipline", "kind", "method", "cmv", "apv", "y_i", "y_m", "r_y",
                                   "dsdr_current", "dsdr_actual", "rmv_raw", "rmv_rounded"});
  for (const auto& r : rows)
    out += dsv::join_row({r.discipline.key(), std::string(to_string(r.kind)),
                          std::string(to_string(r.method)), dsv::shortest(r.cmv),
                          dsv::fixed(r.apv, 3), dsv::fixed(r.y_i, 3), dsv::fixed(r.y_m, 3),
                          dsv::fixed(r.r_y, 6), dsv::fixed(r.dsdr_current, 6),
                          dsv::fixed(r.dsdr_actual, 6), dsv::fixed(r.rmv_raw, 3),
                          r.rmv_rounded ? std::to_string(*r.rmv_rounded) : ""});
  return out;
}

/// Plot data for one indicator: current and actual distance ratios.
inline std::string dsdr_figure_data(const std::vector<RecalibrationRow>& rows, IndicatorKind kind,
                                    const DisciplineRegistry& registry) {
  std::string out = dsv::join_row(
      {"discipline", "dsdr_current", "dsdr_actual_integer", "dsdr_actual_fractional"});
  for (const auto& e : registry.entries()) {
    const auto* ri = find_row(rows, e.id, kind, CountingMethod::integer);
    const auto* rf = find_row(rows, e.id, kind, CountingMethod::fractional);
    if (!ri || !rf) continue;
    out += dsv::join_row({e.id.key(), dsv::fixed(ri->dsdr_current, 6), dsv::fixed(ri->dsdr_actual, 6),
                          dsv::fixed(rf->dsdr_actual, 6)});
  }
  return out;
}

inline std::string derived_rows_to_dsv(const std::vector<DerivedRow>& rows) {
  std::string out = dsv::join_row({"discipline", "kind", "base_kind", "base_cmv", "derived_cmv",
                                   "base_rmv_raw", "rmv_raw", "rmv_rounded"});
  for (const auto& r : rows)
    out += dsv::join_row({r.discipline.key(), std::string(to_string(r.kind)),
                          std::string(to_string(r.base_kind)), dsv::shortest(r.base_cmv),
                          dsv::shortest(r.derived_cmv), dsv::fixed(r.base_rmv_raw, 3),
                          dsv::fixed(r.rmv_raw, 3),
                          r.rmv_rounded ? std::to_string(*r.rmv_rounded) : ""});
  return out;
}

}  // namespace recal
