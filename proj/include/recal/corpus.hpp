#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "recal/registry.hpp"
#include "recal/types.hpp"

namespace recal {

struct ResearcherProfile {
  std::string researcher_id;
  DisciplineId discipline;
  bool has_dsc = false;
  std::optional<int> last_degree_year;

  friend bool operator==(const ResearcherProfile&, const ResearcherProfile&) = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  PubType pub_type = PubType::journal_article;
  std::string language = "en";
  bool wos_indexed = false;
  bool scopus_indexed = false;
  std::optional<double> impact_factor;
  std::vector<std::string> author_ids;  // byline order; [0] is the first author
  DisciplineId discipline;              // empty = inherit from the first corpus author

  bool has_author(std::string_view id) const {
    return std::find(author_ids.begin(), author_ids.end(), id) != author_ids.end();
  }

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct CitationLink {
  std::string citation_id;
  std::string cited_pub_id;
  int citing_year = 0;
  std::vector<std::string> citing_author_ids;
  bool citing_wos_indexed = false;

  friend bool operator==(const CitationLink&, const CitationLink&) = default;
};

/// One problem found while loading or validating records.
struct Violation {
  std::string file;    // "researchers", "publications", "citations" or a path
  std::size_t row = 0; // 1-based source line, 0 when unknown
  std::string column;  // empty when the problem concerns the whole record
  std::string message;

  std::string to_string() const {
    std::string s = file;
    if (row) s += ":" + std::to_string(row);
    if (!column.empty()) s += " [" + column + "]";
    return s + ": " + message;
  }
};

class CorpusValidationError : public ValidationError {
 public:
  explicit CorpusValidationError(std::vector<Violation> violations)
      : ValidationError(summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string s = std::to_string(v.size()) + " corpus violation(s)";
    if (!v.empty()) s += "; first: " + v.front().to_string();
    return s;
  }
  std::vector<Violation> violations_;
};

/// Source line numbers of each record, parallel to the record vectors.
struct SourceLines {
  std::vector<std::size_t> researchers;
  std::vector<std::size_t> publications;
  std::vector<std::size_t> citations;
};

struct CorpusOptions {
  // Researchers may not report a degree obtained after this year.
  std::optional<int> max_degree_year;
};

/// Validated, immutable set of researchers, publications and citations with
/// lookup indexes. Construct through Corpus::build.
class Corpus {
 public:
  Corpus() = default;

  static Corpus build(DisciplineRegistry registry, std::vector<ResearcherProfile> researchers,
                      std::vector<PublicationRecord> publications,
                      std::vector<CitationLink> citations, const CorpusOptions& options = {},
                      const SourceLines& lines = {}) {
    auto violations = validate(registry, researchers, publications, citations, options, lines);
    if (!violations.empty()) throw CorpusValidationError(std::move(violations));
    Corpus c;
    c.registry_ = std::move(registry);
    c.researchers_ = std::move(researchers);
    c.publications_ = std::move(publications);
    c.citations_ = std::move(citations);
    c.index();
    return c;
  }

  // Returns every violation; an empty result means build() will succeed.
  // Publications with an empty discipline get it filled in from their first
  // corpus author.
  static std::vector<Violation> validate(const DisciplineRegistry& registry,
                                         const std::vector<ResearcherProfile>& researchers,
                                         std::vector<PublicationRecord>& publications,
                                         const std::vector<CitationLink>& citations,
                                         const CorpusOptions& options = {},
                                         const SourceLines& lines = {}) {
    std::vector<Violation> out;
    auto line_of = [](const std::vector<std::size_t>& v, std::size_t i) -> std::size_t {
      return i < v.size() ? v[i] : i + 2;  // header is line 1
    };

    std::unordered_map<std::string, const ResearcherProfile*> by_researcher;
    for (std::size_t i = 0; i < researchers.size(); ++i) {
      const auto& r = researchers[i];
      auto line = line_of(lines.researchers, i);
      if (r.researcher_id.empty())
        out.push_back({"researchers", line, "researcher_id", "empty researcher id"});
      else if (!by_researcher.emplace(r.researcher_id, &r).second)
        out.push_back({"researchers", line, "researcher_id",
                       "duplicate researcher id '" + r.researcher_id + "'"});
      if (!registry.contains(r.discipline))
        out.push_back({"researchers", line, "discipline",
                       "unknown discipline '" + r.discipline.key() + "'"});
      if (r.last_degree_year && options.max_degree_year &&
          *r.last_degree_year > *options.max_degree_year)
        out.push_back({"researchers", line, "last_degree_year",
                       "degree year " + std::to_string(*r.last_degree_year) +
                           " is after the window end " + std::to_string(*options.max_degree_year)});
    }

    std::unordered_set<std::string> pub_ids;
    for (std::size_t i = 0; i < publications.size(); ++i) {
      auto& p = publications[i];
      auto line = line_of(lines.publications, i);
      if (p.pub_id.empty())
        out.push_back({"publications", line, "pub_id", "empty publication id"});
      else if (!pub_ids.insert(p.pub_id).second)
        out.push_back({"publications", line, "pub_id", "duplicate publication id '" + p.pub_id + "'"});
      if (p.author_ids.empty())
        out.push_back({"publications", line, "author_ids", "empty author list"});
      if (has_duplicates(p.author_ids))
        out.push_back({"publications", line, "author_ids", "duplicate author id in byline"});
      for (const auto& a : p.author_ids)
        if (a.empty()) out.push_back({"publications", line, "author_ids", "empty author id"});
      if (p.impact_factor) {
        if (*p.impact_factor < 0)
          out.push_back({"publications", line, "impact_factor", "negative impact factor"});
        if (p.pub_type != PubType::journal_article)
          out.push_back({"publications", line, "impact_factor",
                         "impact factor on a non-journal-article publication"});
      }
      if (p.discipline.empty()) {
        for (const auto& a : p.author_ids) {
          auto it = by_researcher.find(a);
          if (it != by_researcher.end()) {
            p.discipline = it->second->discipline;
            break;
          }
        }
        if (p.discipline.empty())
          out.push_back({"publications", line, "discipline",
                         "no discipline given and no corpus researcher among the authors"});
      } else if (!registry.contains(p.discipline)) {
        out.push_back({"publications", line, "discipline",
                       "unknown discipline '" + p.discipline.key() + "'"});
      }
    }

    std::unordered_set<std::string> citation_ids;
    for (std::size_t i = 0; i < citations.size(); ++i) {
      const auto& c = citations[i];
      auto line = line_of(lines.citations, i);
      if (c.citation_id.empty())
        out.push_back({"citations", line, "citation_id", "empty citation id"});
      else if (!citation_ids.insert(c.citation_id).second)
        out.push_back({"citations", line, "citation_id",
                       "duplicate citation id '" + c.citation_id + "'"});
      if (!pub_ids.count(c.cited_pub_id))
        out.push_back({"citations", line, "cited_pub_id",
                       "dangling reference to publication '" + c.cited_pub_id + "'"});
      if (c.citing_author_ids.empty())
        out.push_back({"citations", line, "citing_author_ids", "empty citing author list"});
      if (has_duplicates(c.citing_author_ids))
        out.push_back({"citations", line, "citing_author_ids", "duplicate citing author id"});
    }
    return out;
  }

  const DisciplineRegistry& registry() const noexcept { return registry_; }
  std::span<const ResearcherProfile> researchers() const noexcept { return researchers_; }
  std::span<const PublicationRecord> publications() const noexcept { return publications_; }
  std::span<const CitationLink> citations() const noexcept { return citations_; }

  const ResearcherProfile* find_researcher(std::string_view id) const {
    auto it = researcher_index_.find(std::string(id));
    return it == researcher_index_.end() ? nullptr : &researchers_[it->second];
  }

  const ResearcherProfile& researcher(std::string_view id) const {
    if (auto* r = find_researcher(id)) return *r;
    throw LookupError("unknown researcher '" + std::string(id) + "'");
  }

  const PublicationRecord* find_publication(std::string_view id) const {
    auto it = publication_index_.find(std::string(id));
    return it == publication_index_.end() ? nullptr : &publications_[it->second];
  }

  std::optional<std::size_t> publication_index(std::string_view id) const {
    auto it = publication_index_.find(std::string(id));
    if (it == publication_index_.end()) return std::nullopt;
    return it->second;
  }

  // Indexes into publications() authored by the researcher, in file order.
  std::span<const std::size_t> publications_of(std::string_view researcher_id) const {
    auto it = authored_.find(std::string(researcher_id));
    if (it == authored_.end()) return {};
    return it->second;
  }

  // Indexes into citations() whose cited publication is publications()[pub].
  std::span<const std::size_t> citations_of(std::size_t pub) const { return cited_by_[pub]; }

  // Whether citations()[i] shares no author with the publication it cites.
  bool is_independent(std::size_t citation) const { return independent_[citation] != 0; }

  // Researcher ids of one discipline, sorted ascending.
  std::vector<std::string> researchers_in(const DisciplineId& d) const {
    std::vector<std::string> out;
    for (const auto& r : researchers_)
      if (r.discipline == d) out.push_back(r.researcher_id);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static bool has_duplicates(const std::vector<std::string>& ids) {
    std::unordered_set<std::string_view> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second) return true;
    return false;
  }

  void index() {
    for (std::size_t i = 0; i < researchers_.size(); ++i)
      researcher_index_.emplace(researchers_[i].researcher_id, i);
    cited_by_.assign(publications_.size(), {});
    for (std::size_t i = 0; i < publications_.size(); ++i) {
      publication_index_.emplace(publications_[i].pub_id, i);
      for (const auto& a : publications_[i].author_ids)
        if (researcher_index_.count(a)) authored_[a].push_back(i);
    }
    independent_.assign(citations_.size(), 0);
    for (std::size_t i = 0; i < citations_.size(); ++i) {
      auto p = publication_index_.at(citations_[i].cited_pub_id);
      cited_by_[p].push_back(i);
      const auto& authors = publications_[p].author_ids;
      bool disjoint = std::none_of(
          citations_[i].citing_author_ids.begin(), citations_[i].citing_author_ids.end(),
          [&](const std::string& a) {
            return std::find(authors.begin(), authors.end(), a) != authors.end();
          });
      independent_[i] = disjoint ? 1 : 0;
    }
  }

  DisciplineRegistry registry_;
  std::vector<ResearcherProfile> researchers_;
  std::vector<PublicationRecord> publications_;
  std::vector<CitationLink> citations_;
  std::unordered_map<std::string, std::size_t> researcher_index_;
  std::unordered_map<std::string, std::size_t> publication_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> authored_;
  std::vector<std::vector<std::size_t>> cited_by_;
  std::vector<char> independent_;
};

/// Citations of `pub` with citing year inside `window` whose citing authors
/// share nobody with the publication's byline.
inline std::vector<CitationLink> independent_citations(const Corpus& corpus,
                                                       const PublicationRecord& pub,
                                                       YearRange window) {
  auto idx = corpus.publication_index(pub.pub_id);
  if (!idx) throw LookupError("publication '" + pub.pub_id + "' is not in the corpus");
  std::vector<CitationLink> out;
  for (auto c : corpus.citations_of(*idx)) {
    const auto& link = corpus.citations()[c];
    if (window.contains(link.citing_year) && corpus.is_independent(c)) out.push_back(link);
  }
  return out;
}

// Observed co-authorship counts for one discipline.
struct DisciplineCoauthorship {
  DisciplineId discipline;
  long long pub_count = 0;
  long long multi_authored_count = 0;
  long long coauthor_total = 0;  // authors summed over multi-authored publications

  double multi_ratio() const {
    return pub_count == 0 ? 0.0
                          : 100.0 * static_cast<double>(multi_authored_count) /
                                static_cast<double>(pub_count);
  }

  std::optional<double> avg_coauthors_per_multi() const {
    if (multi_authored_count == 0) return std::nullopt;
    return static_cast<double>(coauthor_total) / static_cast<double>(multi_authored_count);
  }

  DisciplineCoauthorship& operator+=(const DisciplineCoauthorship& o) {
    pub_count += o.pub_count;
    multi_authored_count += o.multi_authored_count;
    coauthor_total += o.coauthor_total;
    return *this;
  }
};

struct CoauthorshipStats {
  std::vector<DisciplineCoauthorship> rows;  // registry order

  const DisciplineCoauthorship* find(const DisciplineId& d) const {
    for (const auto& r : rows)
      if (r.discipline == d) return &r;
    return nullptr;
  }
};

inline CoauthorshipStats corpus_stats(std::span<const PublicationRecord> publications,
                                      const DisciplineRegistry& registry, YearRange window) {
  if (window.empty()) throw ValidationError("empty year window");
  CoauthorshipStats stats;
  for (const auto& e : registry.entries()) stats.rows.push_back({e.id, 0, 0, 0});
  for (const auto& p : publications) {
    if (!window.contains(p.year)) continue;
    auto i = registry.index_of(p.discipline);
    if (!i) continue;
    auto& row = stats.rows[*i];
    ++row.pub_count;
    if (p.author_ids.size() >= 2) {
      ++row.multi_authored_count;
      row.coauthor_total += static_cast<long long>(p.author_ids.size());
    }
  }
  return stats;
}

inline CoauthorshipStats corpus_stats(const Corpus& corpus, YearRange window) {
  return corpus_stats(corpus.publications(), corpus.registry(), window);
}

}  // namespace recal
