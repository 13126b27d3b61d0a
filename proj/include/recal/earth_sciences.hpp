#pragma once

// Reference setting: the nine committees of an earth-sciences section, their
// current minimum indicator values, and observed 2014-2018 co-authorship
// characteristics.

#include <map>

#include "recal/corpus.hpp"
#include "recal/recalibration.hpp"
#include "recal/threshold.hpp"

namespace recal::earth_sciences {

inline DisciplineRegistry registry() {
  return DisciplineRegistry({
      {DisciplineId("geochemistry"), "Geochemistry, Mineralogy and Petrology"},
      {DisciplineId("geodesy"), "Geodesy and Geoinformatics"},
      {DisciplineId("social_geography"), "Social Geography"},
      {DisciplineId("physical_geography"), "Physical Geography"},
      {DisciplineId("geology"), "Geology"},
      {DisciplineId("geophysics"), "Geophysics"},
      {DisciplineId("meteorology"), "Meteorology"},
      {DisciplineId("mining"), "Mining"},
      {DisciplineId("paleontology"), "Paleontology"},
  });
}

enum class Group { natural, applied, social };

inline Group group_of(const DisciplineId& d) {
  const auto& k = d.key();
  if (k == "social_geography") return Group::social;
  if (k == "mining" || k == "geodesy" || k == "physical_geography") return Group::applied;
  return Group::natural;
}

// Minimums per group; 0 marks "not required".
inline double current_minimum(Group g, IndicatorKind k) {
  struct Row {
    IndicatorKind kind;
    double natural, applied, social;
  };
  static const Row rows[] = {
      {IndicatorKind::publications, 30, 30, 40},
      {IndicatorKind::first_author_publications, 15, 15, 20},
      {IndicatorKind::publications_since_degree, 15, 15, 30},
      {IndicatorKind::books_and_monographs, 0, 0, 2},
      {IndicatorKind::foreign_language_publications, 0, 0, 35},
      {IndicatorKind::wos_articles, 12, 8, 6},
      {IndicatorKind::wos_articles_since_degree, 6, 4, 3},
      {IndicatorKind::independent_citations, 150, 120, 150},
      {IndicatorKind::wos_independent_citations, 50, 30, 0},
      {IndicatorKind::cumulative_if, 8, 4, 2},
      {IndicatorKind::h_index, 9, 8, 8},
  };
  for (const auto& r : rows)
    if (r.kind == k) return g == Group::natural ? r.natural : g == Group::applied ? r.applied : r.social;
  return 0;
}

/// The current minimum values of every indicator.
inline ThresholdTable current_minimums() {
  ThresholdTable t;
  t.label = "current minimum values";
  const auto reg = registry();
  for (const auto& e : reg.entries())
    for (auto k : kAllKinds)
      if (double v = current_minimum(group_of(e.id), k); v > 0) t.set(e.id, k, v);
  return t;
}

inline RecalibrationConfig recalibration_config() {
  RecalibrationConfig c;
  const auto reg = registry();
  for (const auto& e : reg.entries())
    for (auto k : kCoreKinds) c.cmv[{e.id, k}] = current_minimum(group_of(e.id), k);
  return c;
}

/// Current minimums of the indicators scaled from a base indicator.
inline std::map<CellKey, double> derived_minimums() {
  std::map<CellKey, double> out;
  const auto reg = registry();
  for (const auto& e : reg.entries())
    for (const auto& [kind, base] : default_base_kinds())
      if (double v = current_minimum(group_of(e.id), kind); v > 0) out[{e.id, kind}] = v;
  return out;
}

/// Observed co-authorship characteristics, 2014-2018.
inline CoauthorshipStats observed_coauthorship() {
  CoauthorshipStats s;
  auto add = [&](const char* key, long long pubs, long long multi, long long coauthors) {
    s.rows.push_back({DisciplineId(key), pubs, multi, coauthors});
  };
  add("geochemistry", 1608, 1529, 11166);
  add("geodesy", 591, 444, 2135);
  add("social_geography", 3277, 2199, 8173);
  add("physical_geography", 2166, 1875, 9633);
  add("geology", 1154, 1073, 6533);
  add("geophysics", 889, 841, 8036);
  add("meteorology", 1064, 969, 5481);
  add("mining", 679, 588, 2724);
  add("paleontology", 532, 443, 2543);
  return s;
}

}  // namespace recal::earth_sciences
