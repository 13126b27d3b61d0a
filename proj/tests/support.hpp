#pragma once

// Test-only helpers: small random corpora, a brute-force indicator oracle
// that works on raw record vectors without the Corpus indexes, and the
// published-table fixtures.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "recal/recal.hpp"

namespace recal::testing {

inline std::string data_path(const std::string& name) { return std::string(RECAL_TEST_DATA) + "/" + name; }

struct Records {
  std::vector<ResearcherProfile> researchers;
  std::vector<PublicationRecord> publications;
  std::vector<CitationLink> citations;
};

inline DisciplineRegistry small_registry() {
  return DisciplineRegistry({{DisciplineId("alpha"), "Alpha"},
                             {DisciplineId("beta"), "Beta"},
                             {DisciplineId("gamma"), "Gamma"}});
}

inline Corpus build(const Records& r, DisciplineRegistry reg = small_registry()) {
  return Corpus::build(std::move(reg), r.researchers, r.publications, r.citations);
}

inline PublicationRecord pub(std::string id, int year, std::vector<std::string> authors,
                             std::string discipline = "alpha") {
  PublicationRecord p;
  p.pub_id = std::move(id);
  p.year = year;
  p.author_ids = std::move(authors);
  p.discipline = DisciplineId(std::move(discipline));
  return p;
}

inline CitationLink cite(std::string id, std::string cited, int year, std::vector<std::string> authors,
                         bool wos = false) {
  return {std::move(id), std::move(cited), year, std::move(authors), wos};
}

/// Random corpus with at most `max_records` records in total, mixing corpus
/// and external authors, self-citations, co-author citations, all
/// publication types and years on both sides of the default windows.
inline Records random_records(std::uint32_t seed, std::size_t max_records = 50) {
  std::mt19937 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  const char* discs[] = {"alpha", "beta", "gamma"};

  Records r;
  int n_res = uni(1, 6);
  int n_pub = uni(0, 20);
  int n_cit = uni(0, static_cast<int>(max_records) - n_res - n_pub);
  for (int i = 0; i < n_res; ++i) {
    ResearcherProfile p;
    p.researcher_id = "r" + std::to_string(i);
    p.discipline = DisciplineId(discs[uni(0, 2)]);
    p.has_dsc = coin(0.3);
    p.last_degree_year = uni(2005, 2018);
    r.researchers.push_back(p);
  }
  for (int j = 0; j < n_pub; ++j) {
    PublicationRecord p;
    p.pub_id = "p" + std::to_string(j);
    p.year = uni(2012, 2020);
    p.pub_type = kAllPubTypes[uni(0, 5)];
    p.language = coin(0.5) ? "hu" : (coin(0.5) ? "en" : "de");
    p.wos_indexed = coin(0.5);
    p.scopus_indexed = coin(0.5);
    if (p.pub_type == PubType::journal_article && coin(0.7)) p.impact_factor = uni(0, 4000) / 1000.0;
    int n_auth = coin(0.3) ? 1 : uni(2, 7);
    std::set<std::string> used;
    while (static_cast<int>(p.author_ids.size()) < n_auth) {
      std::string id = coin(0.5) ? "r" + std::to_string(uni(0, n_res - 1)) : "x" + std::to_string(uni(0, 9));
      if (used.insert(id).second) p.author_ids.push_back(id);
    }
    p.discipline = coin(0.2) ? DisciplineId() : DisciplineId(discs[uni(0, 2)]);
    bool has_corpus_author = std::any_of(p.author_ids.begin(), p.author_ids.end(),
                                         [](const std::string& a) { return a[0] == 'r'; });
    if (p.discipline.empty() && !has_corpus_author) p.discipline = DisciplineId("beta");
    r.publications.push_back(p);
  }
  for (int c = 0; c < n_cit && n_pub > 0; ++c) {
    CitationLink l;
    l.citation_id = "c" + std::to_string(c);
    const auto& target = r.publications[uni(0, n_pub - 1)];
    l.cited_pub_id = target.pub_id;
    l.citing_year = uni(2012, 2021);
    int n_auth = uni(1, 3);
    std::set<std::string> used;
    while (static_cast<int>(l.citing_author_ids.size()) < n_auth) {
      std::string id;
      if (coin(0.25)) id = target.author_ids[uni(0, static_cast<int>(target.author_ids.size()) - 1)];
      else id = "y" + std::to_string(uni(0, 30));
      if (used.insert(id).second) l.citing_author_ids.push_back(id);
    }
    l.citing_wos_indexed = coin(0.5);
    r.citations.push_back(l);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Deliberately index-free: every call rescans the raw
// vectors and recomputes independence by set intersection.

inline bool oracle_independent(const PublicationRecord& p, const CitationLink& c) {
  std::set<std::string> a(p.author_ids.begin(), p.author_ids.end());
  for (const auto& x : c.citing_author_ids)
    if (a.count(x)) return false;
  return true;
}

inline int oracle_independent_count(const Records& r, const PublicationRecord& p, YearRange cw, bool wos_only) {
  int n = 0;
  for (const auto& c : r.citations)
    if (c.cited_pub_id == p.pub_id && c.citing_year >= cw.first && c.citing_year <= cw.last &&
        oracle_independent(p, c) && (!wos_only || c.citing_wos_indexed))
      ++n;
  return n;
}

inline int oracle_h_index(const Records& r, const std::string& id, const Windows& w) {
  std::vector<int> counts;
  for (const auto& p : r.publications)
    if (std::count(p.author_ids.begin(), p.author_ids.end(), id) && p.year >= w.pub_window.first &&
        p.year <= w.pub_window.last)
      counts.push_back(oracle_independent_count(r, p, w.citation_window, false));
  // Exhaustive check of every candidate h.
  int best = 0;
  for (int h = 0; h <= static_cast<int>(counts.size()); ++h) {
    int at_least = static_cast<int>(std::count_if(counts.begin(), counts.end(), [&](int c) { return c >= h; }));
    if (at_least >= h) best = h;
  }
  return best;
}

inline double oracle_value(const Records& r, const std::string& id, IndicatorKind kind, CountingMethod m,
                           const Windows& w, const std::string& domestic = "hu") {
  const ResearcherProfile* who = nullptr;
  for (const auto& x : r.researchers)
    if (x.researcher_id == id) who = &x;
  if (kind == IndicatorKind::h_index) return oracle_h_index(r, id, w);
  double total = 0;
  for (const auto& p : r.publications) {
    if (!std::count(p.author_ids.begin(), p.author_ids.end(), id)) continue;
    if (p.year < w.pub_window.first || p.year > w.pub_window.last) continue;
    double credit = m == CountingMethod::integer ? 1.0 : 1.0 / static_cast<double>(p.author_ids.size());
    bool wos = p.pub_type == PubType::journal_article && p.wos_indexed;
    bool since = who->last_degree_year && p.year >= *who->last_degree_year;
    double units = 0;
    switch (kind) {
      case IndicatorKind::publications: units = 1; break;
      case IndicatorKind::wos_articles: units = wos; break;
      case IndicatorKind::independent_citations: units = oracle_independent_count(r, p, w.citation_window, false); break;
      case IndicatorKind::wos_independent_citations: units = oracle_independent_count(r, p, w.citation_window, true); break;
      case IndicatorKind::cumulative_if:
        units = (p.pub_type == PubType::journal_article && p.impact_factor) ? *p.impact_factor : 0;
        break;
      case IndicatorKind::first_author_publications: units = p.author_ids[0] == id; break;
      case IndicatorKind::publications_since_degree: units = since; break;
      case IndicatorKind::books_and_monographs: units = p.pub_type == PubType::book; break;
      case IndicatorKind::foreign_language_publications: units = p.language != domestic; break;
      case IndicatorKind::wos_articles_since_degree: units = since && wos; break;
      case IndicatorKind::h_index: break;
    }
    total += units * credit;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Published recalibration tables.

struct ExpectedCell {
  DisciplineId discipline;
  IndicatorKind kind;
  CountingMethod method;
  double y_i;
  double rmv_raw;
  std::optional<long long> rmv_rounded;
};

inline std::vector<ExpectedCell> published_expected() {
  auto t = dsv::parse(dsv::read_file(data_path("published_recalibration.csv")));
  std::vector<ExpectedCell> out;
  for (const auto& row : t.rows) {
    ExpectedCell c{DisciplineId(row.fields[0]), kind_or_throw(row.fields[1]), method_or_throw(row.fields[2]),
                   *dsv::parse_double(row.fields[3]), *dsv::parse_double(row.fields[4]), std::nullopt};
    if (auto v = dsv::parse_int(row.fields[5])) c.rmv_rounded = *v;
    out.push_back(c);
  }
  return out;
}

inline ApvTable published_apvs() {
  auto reg = earth_sciences::registry();
  return apv_table_from_dsv(dsv::read_file(data_path("published_apv.csv")), &reg);
}

inline ThresholdTable recalibrated_table() {
  auto text = "label,recalibrated\n" + dsv::read_file(data_path("recalibrated_minimums.csv"));
  return threshold_table_from_dsv(text);
}

// ---------------------------------------------------------------------------
// A social-geography dossier that meets every current minimum exactly:
// 40 publications (20 first-authored, 30 since the 2016 degree, 2 books,
// 35 foreign-language, 6 WoS articles of which 3 since the degree, two with
// impact factor 1.0), 150 independent citations and h-index 8.

inline Records exact_social_geography_dossier() {
  Records r;
  const std::string me = "cand";
  r.researchers.push_back({me, DisciplineId("social_geography"), false, 2016});
  for (int i = 0; i < 40; ++i) {
    PublicationRecord p;
    p.pub_id = "d" + std::to_string(i);
    p.year = i < 10 ? 2014 + (i % 2) : 2016 + (i % 3);  // 10 before the degree, 30 after
    p.discipline = DisciplineId("social_geography");
    bool first = i % 2 == 0;                           // 20 first-authored
    p.author_ids = first ? std::vector<std::string>{me, "co" + std::to_string(i)}
                         : std::vector<std::string>{"co" + std::to_string(i), me};
    p.language = i < 5 ? "hu" : "en";                  // 35 foreign-language
    p.pub_type = PubType::other;
    if (i >= 5 && i < 8) {                             // 3 WoS articles before the degree
      p.pub_type = PubType::journal_article;
      p.wos_indexed = true;
    } else if (i >= 10 && i < 13) {                    // 3 WoS articles after it
      p.pub_type = PubType::journal_article;
      p.wos_indexed = true;
    } else if (i == 38 || i == 39) {
      p.pub_type = PubType::book;
    }
    if (i == 5 || i == 10) p.impact_factor = 1.0;
    r.publications.push_back(p);
  }
  int cid = 0;
  auto add_citations = [&](int pub_index, int n) {
    for (int k = 0; k < n; ++k)
      r.citations.push_back(cite("k" + std::to_string(cid++), "d" + std::to_string(pub_index), 2019,
                                 {"citer" + std::to_string(cid)}));
  };
  for (int i = 20; i < 28; ++i) add_citations(i, 18);  // 8 x 18 = 144
  add_citations(28, 6);                                // 150 total; h stays 8
  // A self-citation that must not count.
  r.citations.push_back(cite("self", "d20", 2019, {me}));
  return r;
}

}  // namespace recal::testing
