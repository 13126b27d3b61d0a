#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recal/corpus.hpp"
#include "recal/dsv.hpp"

namespace recal {

/// Publication and citation windows. Publications are attributed by
/// publication year, citations by citing year.
struct Windows {
  YearRange pub_window{2014, 2018};
  YearRange citation_window{2014, 2019};
};

struct CountingOptions {
  // Anything not in this language counts as foreign.
  std::string domestic_language = "hu";
  // When set, the publications kind only counts these types.
  std::optional<std::vector<PubType>> publication_types;
};

/// Credit an author receives for a publication: 1 under integer counting,
/// 1/n for an n-author publication under fractional counting.
inline double publication_credit(const PublicationRecord& pub, std::string_view author_id,
                                 CountingMethod method) {
  if (!pub.has_author(author_id))
    throw LookupError("'" + std::string(author_id) + "' is not an author of '" + pub.pub_id + "'");
  if (method == CountingMethod::integer) return 1.0;
  return 1.0 / static_cast<double>(pub.author_ids.size());
}

namespace detail {

inline std::size_t count_independent(const Corpus& corpus, std::size_t pub, YearRange window,
                                     bool wos_only) {
  std::size_t n = 0;
  for (auto c : corpus.citations_of(pub)) {
    const auto& link = corpus.citations()[c];
    if (!window.contains(link.citing_year) || !corpus.is_independent(c)) continue;
    if (wos_only && !link.citing_wos_indexed) continue;
    ++n;
  }
  return n;
}

inline bool is_wos_article(const PublicationRecord& p) {
  return p.pub_type == PubType::journal_article && p.wos_indexed;
}

}  // namespace detail

/// Largest h such that h in-window publications each have at least h
/// independent in-window citations.
inline int h_index(const Corpus& corpus, std::string_view researcher_id, const Windows& w) {
  corpus.researcher(researcher_id);
  std::vector<std::size_t> counts;
  for (auto i : corpus.publications_of(researcher_id)) {
    if (!w.pub_window.contains(corpus.publications()[i].year)) continue;
    counts.push_back(detail::count_independent(corpus, i, w.citation_window, false));
  }
  std::sort(counts.begin(), counts.end(), std::greater<>());
  int h = 0;
  while (h < static_cast<int>(counts.size()) && counts[h] >= static_cast<std::size_t>(h + 1)) ++h;
  return h;
}

inline double indicator_value(const Corpus& corpus, std::string_view researcher_id,
                              IndicatorKind kind, CountingMethod method, const Windows& w,
                              const CountingOptions& opt = {}) {
  if (w.pub_window.empty() || w.citation_window.empty())
    throw ValidationError("empty year window");
  const auto& researcher = corpus.researcher(researcher_id);
  if (needs_degree_year(kind) && !researcher.last_degree_year)
    throw ValidationError("researcher '" + researcher.researcher_id + "' has no last_degree_year; " +
                          std::string(to_string(kind)) + " is undefined");
  if (kind == IndicatorKind::h_index) {
    if (method != CountingMethod::integer)
      throw ValidationError("h_index is only defined under integer counting");
    return h_index(corpus, researcher_id, w);
  }

  double total = 0.0;
  for (auto i : corpus.publications_of(researcher_id)) {
    const auto& p = corpus.publications()[i];
    if (!w.pub_window.contains(p.year)) continue;
    double credit = publication_credit(p, researcher_id, method);
    bool since_degree = researcher.last_degree_year && p.year >= *researcher.last_degree_year;
    switch (kind) {
      case IndicatorKind::publications:
        if (!opt.publication_types ||
            std::find(opt.publication_types->begin(), opt.publication_types->end(), p.pub_type) !=
                opt.publication_types->end())
          total += credit;
        break;
      case IndicatorKind::wos_articles:
        if (detail::is_wos_article(p)) total += credit;
        break;
      case IndicatorKind::independent_citations:
        total += credit *
                 static_cast<double>(detail::count_independent(corpus, i, w.citation_window, false));
        break;
      case IndicatorKind::wos_independent_citations:
        total += credit *
                 static_cast<double>(detail::count_independent(corpus, i, w.citation_window, true));
        break;
      case IndicatorKind::cumulative_if:
        if (p.pub_type == PubType::journal_article && p.impact_factor)
          total += *p.impact_factor * credit;
        break;
      case IndicatorKind::first_author_publications:
        if (p.author_ids.front() == researcher_id) total += credit;
        break;
      case IndicatorKind::publications_since_degree:
        if (since_degree) total += credit;
        break;
      case IndicatorKind::books_and_monographs:
        if (p.pub_type == PubType::book) total += credit;
        break;
      case IndicatorKind::foreign_language_publications:
        if (p.language != opt.domestic_language) total += credit;
        break;
      case IndicatorKind::wos_articles_since_degree:
        if (since_degree && detail::is_wos_article(p)) total += credit;
        break;
      case IndicatorKind::h_index:
        break;
    }
  }
  return total;
}

/// One researcher's indicator values under one counting method.
struct IndicatorVector {
  std::string researcher_id;
  CountingMethod method = CountingMethod::integer;
  std::map<IndicatorKind, double> values;

  std::optional<double> value(IndicatorKind k) const {
    auto it = values.find(k);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
};

/// One vector per (researcher, method), researchers ordered by id and
/// methods in the order given. h_index is only filled for integer vectors.
inline std::vector<IndicatorVector> indicator_matrix(const Corpus& corpus,
                                                     const std::vector<IndicatorKind>& kinds,
                                                     const std::vector<CountingMethod>& methods,
                                                     const Windows& w,
                                                     const CountingOptions& opt = {}) {
  std::vector<std::string> ids;
  for (const auto& r : corpus.researchers()) ids.push_back(r.researcher_id);
  std::sort(ids.begin(), ids.end());

  std::vector<IndicatorVector> out;
  out.reserve(ids.size() * methods.size());
  for (const auto& id : ids) {
    for (auto m : methods) {
      IndicatorVector v{id, m, {}};
      for (auto k : kinds) {
        if (k == IndicatorKind::h_index && m != CountingMethod::integer) continue;
        try {
          v.values[k] = indicator_value(corpus, id, k, m, w, opt);
        } catch (const ValidationError& e) {
          throw ValidationError("researcher '" + id + "': " + e.what());
        }
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

inline std::string matrix_to_dsv(const std::vector<IndicatorVector>& matrix,
                                 const std::vector<IndicatorKind>& kinds) {
  std::string out = dsv::join_row({"researcher_id", "method", "kind", "value"});
  for (const auto& v : matrix)
    for (auto k : kinds)
      if (auto x = v.value(k))
        out += dsv::join_row({v.researcher_id, std::string(to_string(v.method)),
                              std::string(to_string(k)), dsv::fixed(*x, 6)});
  return out;
}

}  // namespace recal
