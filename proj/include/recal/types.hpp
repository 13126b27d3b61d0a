#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace recal {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Missing researcher, table entry, or similar lookup failure.
class LookupError : public Error {
 public:
  using Error::Error;
};

// A discipline whose actual performance value is zero, so no finite
// number of years fulfills its minimum.
class DegenerateDisciplineError : public Error {
 public:
  DegenerateDisciplineError(std::string discipline, const std::string& what)
      : Error(what), discipline_(std::move(discipline)) {}
  const std::string& discipline() const noexcept { return discipline_; }

 private:
  std::string discipline_;
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Committee key such as "geology". Membership in a registry is checked
/// where a registry is available.
class DisciplineId {
 public:
  DisciplineId() = default;
  explicit DisciplineId(std::string key) : key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }
  bool empty() const noexcept { return key_.empty(); }

  friend auto operator<=>(const DisciplineId&, const DisciplineId&) = default;

 private:
  std::string key_;
};

/// Inclusive range of calendar years.
struct YearRange {
  int first = 0;
  int last = 0;

  bool empty() const noexcept { return last < first; }
  bool contains(int year) const noexcept { return year >= first && year <= last; }
  int span() const noexcept { return empty() ? 0 : last - first + 1; }

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

enum class CountingMethod { integer, fractional };

inline constexpr std::array<CountingMethod, 2> kAllMethods = {CountingMethod::integer,
                                                              CountingMethod::fractional};

enum class IndicatorKind {
  publications,
  wos_articles,
  independent_citations,
  cumulative_if,
  first_author_publications,
  publications_since_degree,
  books_and_monographs,
  foreign_language_publications,
  wos_articles_since_degree,
  wos_independent_citations,
  h_index,
};

inline constexpr std::array<IndicatorKind, 11> kAllKinds = {
    IndicatorKind::publications,
    IndicatorKind::wos_articles,
    IndicatorKind::independent_citations,
    IndicatorKind::cumulative_if,
    IndicatorKind::first_author_publications,
    IndicatorKind::publications_since_degree,
    IndicatorKind::books_and_monographs,
    IndicatorKind::foreign_language_publications,
    IndicatorKind::wos_articles_since_degree,
    IndicatorKind::wos_independent_citations,
    IndicatorKind::h_index,
};

// The four indicators every discipline requires.
inline constexpr std::array<IndicatorKind, 4> kCoreKinds = {
    IndicatorKind::publications,
    IndicatorKind::wos_articles,
    IndicatorKind::independent_citations,
    IndicatorKind::cumulative_if,
};

enum class PubType { journal_article, book, book_chapter, conference_paper, map, other };

inline constexpr std::array<PubType, 6> kAllPubTypes = {
    PubType::journal_article, PubType::book, PubType::book_chapter,
    PubType::conference_paper, PubType::map, PubType::other};

inline std::string_view to_string(CountingMethod m) {
  return m == CountingMethod::integer ? "integer" : "fractional";
}

inline std::string_view to_string(IndicatorKind k) {
  switch (k) {
    case IndicatorKind::publications: return "publications";
    case IndicatorKind::wos_articles: return "wos_articles";
    case IndicatorKind::independent_citations: return "independent_citations";
    case IndicatorKind::cumulative_if: return "cumulative_if";
    case IndicatorKind::first_author_publications: return "first_author_publications";
    case IndicatorKind::publications_since_degree: return "publications_since_degree";
    case IndicatorKind::books_and_monographs: return "books_and_monographs";
    case IndicatorKind::foreign_language_publications: return "foreign_language_publications";
    case IndicatorKind::wos_articles_since_degree: return "wos_articles_since_degree";
    case IndicatorKind::wos_independent_citations: return "wos_independent_citations";
    case IndicatorKind::h_index: return "h_index";
  }
  return "?";
}

inline std::string_view to_string(PubType t) {
  switch (t) {
    case PubType::journal_article: return "journal_article";
    case PubType::book: return "book";
    case PubType::book_chapter: return "book_chapter";
    case PubType::conference_paper: return "conference_paper";
    case PubType::map: return "map";
    case PubType::other: return "other";
  }
  return "?";
}

inline std::optional<CountingMethod> parse_method(std::string_view s) {
  for (auto m : kAllMethods)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

inline std::optional<IndicatorKind> parse_kind(std::string_view s) {
  for (auto k : kAllKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline std::optional<PubType> parse_pub_type(std::string_view s) {
  for (auto t : kAllPubTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline CountingMethod method_or_throw(std::string_view s) {
  if (auto m = parse_method(s)) return *m;
  throw ValidationError("unknown counting method '" + std::string(s) + "'");
}

inline IndicatorKind kind_or_throw(std::string_view s) {
  if (auto k = parse_kind(s)) return *k;
  throw ValidationError("unknown indicator kind '" + std::string(s) + "'");
}

inline bool is_core(IndicatorKind k) {
  for (auto c : kCoreKinds)
    if (c == k) return true;
  return false;
}

// Kinds whose integer-method value is a whole number.
inline bool is_count_kind(IndicatorKind k) { return k != IndicatorKind::cumulative_if; }

inline bool needs_degree_year(IndicatorKind k) {
  return k == IndicatorKind::publications_since_degree ||
         k == IndicatorKind::wos_articles_since_degree;
}

}  // namespace recal
