#pragma once

// Reading and writing the three corpus record files. Each file is either
// comma-separated with a header row, or line-delimited JSON objects with the
// same field names. The format is sniffed from the first non-blank character.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "recal/corpus.hpp"
#include "recal/dsv.hpp"

namespace recal {

inline const std::vector<std::string> kResearcherColumns = {"researcher_id", "discipline",
                                                            "has_dsc", "last_degree_year"};
inline const std::vector<std::string> kPublicationColumns = {
    "pub_id",        "year",       "pub_type",   "language",  "wos_indexed",
    "scopus_indexed", "impact_factor", "author_ids", "discipline"};
inline const std::vector<std::string> kCitationColumns = {
    "citation_id", "cited_pub_id", "citing_year", "citing_author_ids", "citing_wos_indexed"};

enum class RecordFormat { dsv, jsonl };

struct CorpusPaths {
  std::string researchers;
  std::string publications;
  std::string citations;
};

/// Records as read from disk, before cross-reference validation.
struct CorpusRecords {
  std::vector<ResearcherProfile> researchers;
  std::vector<PublicationRecord> publications;
  std::vector<CitationLink> citations;
  SourceLines lines;
  std::vector<Violation> violations;  // parse-level problems
};

namespace detail {

// A record flattened to column -> text, with its source line.
struct FlatRecord {
  std::size_t line = 0;
  std::map<std::string, std::string> cells;
};

inline bool looks_like_jsonl(std::string_view text) {
  auto t = dsv::trim(text);
  return !t.empty() && t.front() == '{';
}

inline std::string json_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out.push_back(';');
      out += json_cell(v[i]);
    }
    return out;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return dsv::shortest(v.get<double>());
  return v.dump();
}

inline std::vector<FlatRecord> flatten(std::string_view text, const std::string& file,
                                       const std::vector<std::string>& columns,
                                       std::vector<Violation>& violations) {
  std::vector<FlatRecord> out;
  if (dsv::trim(text).empty()) return out;
  if (looks_like_jsonl(text)) {
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      if (!dsv::trim(line).empty()) {
        auto obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
          violations.push_back({file, line_no, "", "malformed JSON object"});
        } else {
          FlatRecord rec{line_no, {}};
          bool ok = true;
          for (const auto& c : columns) {
            if (!obj.contains(c)) {
              violations.push_back({file, line_no, c, "missing field"});
              ok = false;
            } else {
              rec.cells[c] = json_cell(obj[c]);
            }
          }
          if (ok) out.push_back(std::move(rec));
        }
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    return out;
  }

  auto table = dsv::parse(text);
  std::vector<std::size_t> idx;
  bool header_ok = true;
  for (const auto& c : columns) {
    auto i = table.column(c);
    if (i == dsv::Table::npos) {
      violations.push_back({file, 1, c, "missing column in header"});
      header_ok = false;
    }
    idx.push_back(i);
  }
  if (!header_ok) return out;
  for (const auto& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      violations.push_back({file, row.line, "",
                            "expected " + std::to_string(table.header.size()) + " fields, found " +
                                std::to_string(row.fields.size())});
      continue;
    }
    FlatRecord rec{row.line, {}};
    for (std::size_t k = 0; k < columns.size(); ++k) rec.cells[columns[k]] = row.fields[idx[k]];
    out.push_back(std::move(rec));
  }
  return out;
}

// Field parsers append a violation and return false on bad input.
struct FieldReader {
  const FlatRecord& rec;
  const std::string& file;
  std::vector<Violation>& violations;
  bool ok = true;

  const std::string& text(const std::string& col) const { return rec.cells.at(col); }

  void fail(const std::string& col, const std::string& msg) {
    violations.push_back({file, rec.line, col, msg});
    ok = false;
  }

  int year(const std::string& col) {
    auto v = dsv::parse_int(text(col));
    if (!v) {
      fail(col, "expected an integer year, got '" + text(col) + "'");
      return 0;
    }
    return static_cast<int>(*v);
  }

  std::optional<int> optional_year(const std::string& col) {
    if (dsv::trim(text(col)).empty()) return std::nullopt;
    return year(col);
  }

  bool boolean(const std::string& col) {
    auto v = dsv::parse_bool(text(col));
    if (!v) {
      fail(col, "expected true or false, got '" + text(col) + "'");
      return false;
    }
    return *v;
  }

  std::optional<double> optional_number(const std::string& col) {
    if (dsv::trim(text(col)).empty()) return std::nullopt;
    auto v = dsv::parse_double(text(col));
    if (!v) fail(col, "expected a number, got '" + text(col) + "'");
    return v;
  }
};

}  // namespace detail

inline void parse_researchers(std::string_view text, CorpusRecords& out,
                              const std::string& file = "researchers") {
  for (const auto& rec : detail::flatten(text, file, kResearcherColumns, out.violations)) {
    detail::FieldReader f{rec, file, out.violations};
    ResearcherProfile r;
    r.researcher_id = f.text("researcher_id");
    r.discipline = DisciplineId(f.text("discipline"));
    r.has_dsc = f.boolean("has_dsc");
    r.last_degree_year = f.optional_year("last_degree_year");
    if (f.ok) {
      out.researchers.push_back(std::move(r));
      out.lines.researchers.push_back(rec.line);
    }
  }
}

inline void parse_publications(std::string_view text, CorpusRecords& out,
                               const std::string& file = "publications") {
  for (const auto& rec : detail::flatten(text, file, kPublicationColumns, out.violations)) {
    detail::FieldReader f{rec, file, out.violations};
    PublicationRecord p;
    p.pub_id = f.text("pub_id");
    p.year = f.year("year");
    if (auto t = parse_pub_type(f.text("pub_type")))
      p.pub_type = *t;
    else
      f.fail("pub_type", "unknown publication type '" + f.text("pub_type") + "'");
    p.language = f.text("language");
    if (p.language.empty()) f.fail("language", "empty language code");
    for (char c : p.language)
      if (c < 'a' || c > 'z') {
        f.fail("language", "language code must be lowercase ISO-639-1");
        break;
      }
    p.wos_indexed = f.boolean("wos_indexed");
    p.scopus_indexed = f.boolean("scopus_indexed");
    p.impact_factor = f.optional_number("impact_factor");
    p.author_ids = dsv::split_multi(f.text("author_ids"));
    p.discipline = DisciplineId(f.text("discipline"));
    if (f.ok) {
      out.publications.push_back(std::move(p));
      out.lines.publications.push_back(rec.line);
    }
  }
}

inline void parse_citations(std::string_view text, CorpusRecords& out,
                            const std::string& file = "citations") {
  for (const auto& rec : detail::flatten(text, file, kCitationColumns, out.violations)) {
    detail::FieldReader f{rec, file, out.violations};
    CitationLink c;
    c.citation_id = f.text("citation_id");
    c.cited_pub_id = f.text("cited_pub_id");
    c.citing_year = f.year("citing_year");
    c.citing_author_ids = dsv::split_multi(f.text("citing_author_ids"));
    c.citing_wos_indexed = f.boolean("citing_wos_indexed");
    if (f.ok) {
      out.citations.push_back(std::move(c));
      out.lines.citations.push_back(rec.line);
    }
  }
}

/// Reads all three files and runs every validation rule, collecting all
/// violations instead of stopping at the first. Throws IoError when a file
/// cannot be read.
struct CorpusLoadResult {
  std::optional<Corpus> corpus;
  std::vector<Violation> violations;
};

inline CorpusLoadResult try_load_corpus_text(std::string_view researchers,
                                             std::string_view publications,
                                             std::string_view citations,
                                             const DisciplineRegistry& registry,
                                             const CorpusOptions& options = {},
                                             const CorpusPaths& names = {"researchers",
                                                                         "publications",
                                                                         "citations"}) {
  CorpusRecords rec;
  parse_researchers(researchers, rec, names.researchers);
  parse_publications(publications, rec, names.publications);
  parse_citations(citations, rec, names.citations);
  auto more = Corpus::validate(registry, rec.researchers, rec.publications, rec.citations, options,
                               rec.lines);
  for (auto& v : more) {
    if (v.file == "researchers") v.file = names.researchers;
    else if (v.file == "publications") v.file = names.publications;
    else if (v.file == "citations") v.file = names.citations;
  }
  CorpusLoadResult result;
  result.violations = std::move(rec.violations);
  result.violations.insert(result.violations.end(), more.begin(), more.end());
  if (result.violations.empty())
    result.corpus = Corpus::build(registry, std::move(rec.researchers), std::move(rec.publications),
                                  std::move(rec.citations), options, rec.lines);
  return result;
}

inline CorpusLoadResult try_load_corpus(const CorpusPaths& paths, const DisciplineRegistry& registry,
                                        const CorpusOptions& options = {}) {
  auto r = dsv::read_file(paths.researchers);
  auto p = dsv::read_file(paths.publications);
  auto c = dsv::read_file(paths.citations);
  return try_load_corpus_text(r, p, c, registry, options, paths);
}

/// Loads and validates; throws CorpusValidationError listing every violation.
inline Corpus load_corpus(const CorpusPaths& paths, const DisciplineRegistry& registry,
                          const CorpusOptions& options = {}) {
  auto result = try_load_corpus(paths, registry, options);
  if (!result.corpus) throw CorpusValidationError(std::move(result.violations));
  return std::move(*result.corpus);
}

inline Corpus load_corpus_text(std::string_view researchers, std::string_view publications,
                               std::string_view citations, const DisciplineRegistry& registry,
                               const CorpusOptions& options = {}) {
  auto result = try_load_corpus_text(researchers, publications, citations, registry, options);
  if (!result.corpus) throw CorpusValidationError(std::move(result.violations));
  return std::move(*result.corpus);
}

namespace detail {

inline std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(';');
    out += ids[i];
  }
  return out;
}

inline std::vector<std::string> researcher_cells(const ResearcherProfile& r) {
  return {r.researcher_id, r.discipline.key(), r.has_dsc ? "true" : "false",
          r.last_degree_year ? std::to_string(*r.last_degree_year) : ""};
}

inline std::vector<std::string> publication_cells(const PublicationRecord& p) {
  return {p.pub_id,
          std::to_string(p.year),
          std::string(to_string(p.pub_type)),
          p.language,
          p.wos_indexed ? "true" : "false",
          p.scopus_indexed ? "true" : "false",
          p.impact_factor ? dsv::shortest(*p.impact_factor) : "",
          join_ids(p.author_ids),
          p.discipline.key()};
}

inline std::vector<std::string> citation_cells(const CitationLink& c) {
  return {c.citation_id, c.cited_pub_id, std::to_string(c.citing_year),
          join_ids(c.citing_author_ids), c.citing_wos_indexed ? "true" : "false"};
}

}  // namespace detail

struct CorpusText {
  std::string researchers;
  std::string publications;
  std::string citations;
};

inline CorpusText serialize_dsv(std::span<const ResearcherProfile> researchers,
                                std::span<const PublicationRecord> publications,
                                std::span<const CitationLink> citations) {
  CorpusText t;
  t.researchers = dsv::join_row(kResearcherColumns);
  for (const auto& r : researchers) t.researchers += dsv::join_row(detail::researcher_cells(r));
  t.publications = dsv::join_row(kPublicationColumns);
  for (const auto& p : publications) t.publications += dsv::join_row(detail::publication_cells(p));
  t.citations = dsv::join_row(kCitationColumns);
  for (const auto& c : citations) t.citations += dsv::join_row(detail::citation_cells(c));
  return t;
}

inline CorpusText serialize_dsv(const Corpus& c) {
  return serialize_dsv(c.researchers(), c.publications(), c.citations());
}

inline CorpusText serialize_jsonl(const Corpus& corpus) {
  using nlohmann::ordered_json;
  CorpusText t;
  for (const auto& r : corpus.researchers()) {
    ordered_json j;
    j["researcher_id"] = r.researcher_id;
    j["discipline"] = r.discipline.key();
    j["has_dsc"] = r.has_dsc;
    j["last_degree_year"] = r.last_degree_year ? ordered_json(*r.last_degree_year) : ordered_json();
    t.researchers += j.dump() + "\n";
  }
  for (const auto& p : corpus.publications()) {
    ordered_json j;
    j["pub_id"] = p.pub_id;
    j["year"] = p.year;
    j["pub_type"] = to_string(p.pub_type);
    j["language"] = p.language;
    j["wos_indexed"] = p.wos_indexed;
    j["scopus_indexed"] = p.scopus_indexed;
    j["impact_factor"] = p.impact_factor ? ordered_json(*p.impact_factor) : ordered_json();
    j["author_ids"] = p.author_ids;
    j["discipline"] = p.discipline.key();
    t.publications += j.dump() + "\n";
  }
  for (const auto& c : corpus.citations()) {
    ordered_json j;
    j["citation_id"] = c.citation_id;
    j["cited_pub_id"] = c.cited_pub_id;
    j["citing_year"] = c.citing_year;
    j["citing_author_ids"] = c.citing_author_ids;
    j["citing_wos_indexed"] = c.citing_wos_indexed;
    t.citations += j.dump() + "\n";
  }
  return t;
}

inline void write_corpus(const CorpusText& text, const CorpusPaths& paths) {
  dsv::write_file(paths.researchers, text.researchers);
  dsv::write_file(paths.publications, text.publications);
  dsv::write_file(paths.citations, text.citations);
}

// Conventional file names inside a corpus directory.
inline CorpusPaths corpus_paths_in(const std::string& dir, RecordFormat format = RecordFormat::dsv) {
  std::string ext = format == RecordFormat::dsv ? ".csv" : ".jsonl";
  return {dir + "/researchers" + ext, dir + "/publications" + ext, dir + "/citations" + ext};
}

inline std::string stats_to_dsv(const CoauthorshipStats& stats) {
  std::string out = dsv::join_row({"discipline", "pub_count", "multi_authored_count",
                                   "multi_ratio", "coauthor_total", "avg_coauthors_per_multi"});
  for (const auto& r : stats.rows) {
    auto avg = r.avg_coauthors_per_multi();
    out += dsv::join_row({r.discipline.key(), std::to_string(r.pub_count),
                          std::to_string(r.multi_authored_count), dsv::fixed(r.multi_ratio(), 2),
                          std::to_string(r.coauthor_total), avg ? dsv::fixed(*avg, 2) : ""});
  }
  return out;
}

}  // namespace recal
