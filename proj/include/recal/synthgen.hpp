#pragma once

// Seeded synthetic corpora whose per-discipline co-authorship statistics hit
// configurable targets.
//
// Distributional choices:
//   - publication years uniform over the publication window;
//   - exactly round(pub_count * ratio) multi-authored publications, placed by
//     a seeded shuffle;
//   - multi-author byline sizes 2 + Geometric(p) with p = 1 / (mean - 1),
//     then nudged by seeded +-1 steps until the total equals
//     round(mean * multi_count);
//   - Poisson(citation_rate) citations per publication from citing authors
//     that never appear on the cited byline.
//
// Random draws use std::mt19937_64, whose output sequence is fixed by the
// C++ standard, with hand-written transforms (std distributions are
// implementation-defined), so a seed reproduces across platforms.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "recal/corpus.hpp"
#include "recal/dsv.hpp"

namespace recal {

struct SynthDisciplineParams {
  DisciplineId discipline;
  std::size_t researcher_count = 0;
  std::size_t pub_count = 0;
  double multi_ratio_target = 0;    // percent
  double mean_coauthors_multi = 2;  // authors per multi-authored publication
  double wos_article_ratio = 0.35;
  double citation_rate = 1.7;       // independent citations per publication
  double if_mean = 2.0;
  double domestic_language_ratio = 0.5;
};

struct SynthSpec {
  std::uint64_t seed = 1;
  std::vector<SynthDisciplineParams> disciplines;
  YearRange pub_window{2014, 2018};
  YearRange citation_window{2014, 2019};
  std::string domestic_language = "hu";

  void validate() const {
    if (pub_window.empty() || citation_window.empty())
      throw ValidationError("synthetic spec windows must be non-empty");
    if (disciplines.empty()) throw ValidationError("synthetic spec has no disciplines");
    for (const auto& d : disciplines) {
      auto where = "discipline '" + d.discipline.key() + "': ";
      if (d.discipline.empty()) throw ValidationError("synthetic spec has an empty discipline key");
      if (!(d.multi_ratio_target >= 0 && d.multi_ratio_target <= 100))
        throw ValidationError(where + "multi_ratio_target must lie in [0, 100]");
      if (d.multi_ratio_target > 0 && !(d.mean_coauthors_multi >= 2))
        throw ValidationError(where + "mean_coauthors_multi must be >= 2");
      auto unit = [&](double v, const char* name) {
        if (!(v >= 0 && v <= 1)) throw ValidationError(where + name + " must lie in [0, 1]");
      };
      unit(d.wos_article_ratio, "wos_article_ratio");
      unit(d.domestic_language_ratio, "domestic_language_ratio");
      if (!(d.citation_rate >= 0)) throw ValidationError(where + "citation_rate must be >= 0");
      if (!(d.if_mean >= 0)) throw ValidationError(where + "if_mean must be >= 0");
    }
  }
};

/// Deterministic random source.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n), unbiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = gen_();
    while (x >= limit);
    return x % n;
  }

  bool chance(double p) { return uniform() < p; }

  // Failures before the first success, success probability p in (0, 1].
  std::uint64_t geometric(double p) {
    if (p >= 1) return 0;
    return static_cast<std::uint64_t>(std::floor(std::log1p(-uniform()) / std::log1p(-p)));
  }

  std::uint64_t poisson(double lambda) {
    std::uint64_t total = 0;
    while (lambda > 30) {
      total += poisson_small(30);
      lambda -= 30;
    }
    return total + poisson_small(lambda);
  }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t poisson_small(double lambda) {
    if (lambda <= 0) return 0;
    const double limit = std::exp(-lambda);
    double prod = uniform();
    std::uint64_t k = 0;
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

  std::mt19937_64 gen_;
};

struct SyntheticRecords {
  DisciplineRegistry registry;
  std::vector<ResearcherProfile> researchers;
  std::vector<PublicationRecord> publications;
  std::vector<CitationLink> citations;
};

namespace detail {

inline std::string padded(std::size_t n, int width) {
  auto s = std::to_string(n);
  if (static_cast<int>(s.size()) < width) s.insert(0, width - s.size(), '0');
  return s;
}

inline std::vector<std::size_t> byline_sizes(SynthRng& rng, const SynthDisciplineParams& p) {
  const std::size_t n = p.pub_count;
  const auto multi = static_cast<std::size_t>(std::llround(static_cast<double>(n) * p.multi_ratio_target / 100.0));
  std::vector<std::size_t> sizes(n, 1);
  if (multi == 0) return sizes;

  std::vector<std::size_t> multi_sizes(multi);
  const double success = 1.0 / (p.mean_coauthors_multi - 1.0);
  std::size_t total = 0;
  for (auto& s : multi_sizes) {
    s = 2 + rng.geometric(success);
    total += s;
  }
  const auto target = static_cast<std::size_t>(std::llround(p.mean_coauthors_multi * static_cast<double>(multi)));
  while (total < target) {
    ++multi_sizes[rng.below(multi)];
    ++total;
  }
  while (total > target) {
    auto& s = multi_sizes[rng.below(multi)];
    if (s > 2) {
      --s;
      --total;
    }
  }

  // Multi-authored slots are the first `multi` entries of a shuffled index list.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (std::size_t j = 0; j < multi; ++j) sizes[order[j]] = multi_sizes[j];
  return sizes;
}

inline PubType pick_other_type(SynthRng& rng) {
  double u = rng.uniform();
  if (u < 0.35) return PubType::journal_article;
  if (u < 0.60) return PubType::book_chapter;
  if (u < 0.80) return PubType::conference_paper;
  if (u < 0.90) return PubType::book;
  if (u < 0.95) return PubType::map;
  return PubType::other;
}

}  // namespace detail

/// Generates raw records; see generate_corpus for the validated form.
inline SyntheticRecords generate_records(const SynthSpec& spec) {
  spec.validate();
  SyntheticRecords out;
  std::vector<DisciplineRegistry::Entry> entries;
  for (const auto& d : spec.disciplines) entries.push_back({d.discipline, d.discipline.key()});
  out.registry = DisciplineRegistry(std::move(entries));

  for (std::size_t di = 0; di < spec.disciplines.size(); ++di) {
    const auto& p = spec.disciplines[di];
    const auto& key = p.discipline.key();
    SynthRng rng(SynthRng::splitmix64(spec.seed ^ SynthRng::splitmix64(di + 1)));

    std::vector<std::string> members;
    for (std::size_t i = 0; i < p.researcher_count; ++i) {
      ResearcherProfile r;
      r.researcher_id = key + "-r" + detail::padded(i + 1, 4);
      r.discipline = p.discipline;
      r.has_dsc = rng.chance(0.2);
      r.last_degree_year = spec.pub_window.first - static_cast<int>(rng.below(20)) +
                           static_cast<int>(rng.below(3));
      members.push_back(r.researcher_id);
      out.researchers.push_back(std::move(r));
    }

    const std::size_t external_pool = std::max<std::size_t>(8, 5 * p.researcher_count);
    std::size_t citing_counter = 0;
    auto sizes = detail::byline_sizes(rng, p);
    for (std::size_t j = 0; j < p.pub_count; ++j) {
      PublicationRecord pub;
      pub.pub_id = key + "-p" + detail::padded(j + 1, 5);
      pub.discipline = p.discipline;
      pub.year = spec.pub_window.first + static_cast<int>(rng.below(spec.pub_window.span()));

      std::unordered_set<std::string> used;
      auto add_author = [&](std::string id) {
        used.insert(id);
        pub.author_ids.push_back(std::move(id));
      };
      if (!members.empty()) add_author(members[rng.below(members.size())]);
      while (pub.author_ids.size() < sizes[j]) {
        std::string id;
        if (!members.empty() && rng.chance(0.25)) id = members[rng.below(members.size())];
        if (id.empty() || used.count(id))
          id = "x-" + key + "-" + std::to_string(rng.below(external_pool));
        if (used.count(id)) id = "x-" + key + "-u" + pub.pub_id + "-" + std::to_string(pub.author_ids.size());
        add_author(std::move(id));
      }

      if (rng.chance(p.wos_article_ratio)) {
        pub.pub_type = PubType::journal_article;
        pub.wos_indexed = true;
        pub.scopus_indexed = rng.chance(0.9);
        if (p.if_mean > 0)
          pub.impact_factor = std::round(rng.exponential(p.if_mean) * 1000.0) / 1000.0;
      } else {
        pub.pub_type = detail::pick_other_type(rng);
        pub.scopus_indexed = pub.pub_type == PubType::journal_article && rng.chance(0.3);
      }
      pub.language = rng.chance(p.domestic_language_ratio) ? spec.domestic_language : "en";

      const int first_year = std::max(pub.year, spec.citation_window.first);
      const auto n_cit = rng.poisson(p.citation_rate);
      for (std::uint64_t c = 0; c < n_cit && first_year <= spec.citation_window.last; ++c) {
        CitationLink link;
        link.citation_id = pub.pub_id + "-c" + std::to_string(c + 1);
        link.cited_pub_id = pub.pub_id;
        link.citing_year = first_year + static_cast<int>(rng.below(spec.citation_window.last - first_year + 1));
        const auto n_authors = 1 + rng.below(3);
        for (std::uint64_t a = 0; a < n_authors; ++a)
          link.citing_author_ids.push_back("c-" + key + "-" + std::to_string(++citing_counter));
        link.citing_wos_indexed = rng.chance(p.wos_article_ratio);
        out.citations.push_back(std::move(link));
      }
      out.publications.push_back(std::move(pub));
    }
  }
  return out;
}

inline Corpus generate_corpus(const SynthSpec& spec) {
  auto rec = generate_records(spec);
  CorpusOptions opt;
  opt.max_degree_year = spec.pub_window.last;
  return Corpus::build(std::move(rec.registry), std::move(rec.researchers), std::move(rec.publications),
                       std::move(rec.citations), opt);
}

/// Generator targets transcribed from observed co-authorship statistics.
inline std::vector<SynthDisciplineParams> params_from_observed(const CoauthorshipStats& stats) {
  std::vector<SynthDisciplineParams> out;
  for (const auto& row : stats.rows) {
    SynthDisciplineParams p;
    p.discipline = row.discipline;
    p.pub_count = static_cast<std::size_t>(row.pub_count);
    p.researcher_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(row.pub_count) / 21.0)));
    p.multi_ratio_target = row.multi_ratio();
    p.mean_coauthors_multi = row.avg_coauthors_per_multi().value_or(2.0);
    out.push_back(p);
  }
  return out;
}

inline nlohmann::ordered_json synth_spec_to_json(const SynthSpec& s) {
  nlohmann::ordered_json j;
  j["schema"] = "recal-synth/1";
  j["seed"] = s.seed;
  j["pub_window"] = {s.pub_window.first, s.pub_window.last};
  j["citation_window"] = {s.citation_window.first, s.citation_window.last};
  j["domestic_language"] = s.domestic_language;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : s.disciplines) {
    nlohmann::ordered_json e;
    e["discipline"] = d.discipline.key();
    e["researcher_count"] = d.researcher_count;
    e["pub_count"] = d.pub_count;
    e["multi_ratio_target"] = d.multi_ratio_target;
    e["mean_coauthors_multi"] = d.mean_coauthors_multi;
    e["wos_article_ratio"] = d.wos_article_ratio;
    e["citation_rate"] = d.citation_rate;
    e["if_mean"] = d.if_mean;
    e["domestic_language_ratio"] = d.domestic_language_ratio;
    arr.push_back(std::move(e));
  }
  j["disciplines"] = std::move(arr);
  return j;
}

inline YearRange year_range_from_json(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ValidationError(std::string(name) + " must be a [first, last] pair of years");
  return {j[0].get<int>(), j[1].get<int>()};
}

inline SynthSpec synth_spec_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema", std::string()) != "recal-synth/1")
      throw ValidationError("synthetic spec must declare schema \"recal-synth/1\"");
    SynthSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("pub_window")) s.pub_window = year_range_from_json(j["pub_window"], "pub_window");
    if (j.contains("citation_window"))
      s.citation_window = year_range_from_json(j["citation_window"], "citation_window");
    s.domestic_language = j.value("domestic_language", s.domestic_language);
    for (const auto& e : j.at("disciplines")) {
      SynthDisciplineParams d;
      d.discipline = DisciplineId(e.at("discipline").get<std::string>());
      d.researcher_count = e.at("researcher_count").get<std::size_t>();
      d.pub_count = e.at("pub_count").get<std::size_t>();
      d.multi_ratio_target = e.at("multi_ratio_target").get<double>();
      d.mean_coauthors_multi = e.value("mean_coauthors_multi", d.mean_coauthors_multi);
      d.wos_article_ratio = e.value("wos_article_ratio", d.wos_article_ratio);
      d.citation_rate = e.value("citation_rate", d.citation_rate);
      d.if_mean = e.value("if_mean", d.if_mean);
      d.domestic_language_ratio = e.value("domestic_language_ratio", d.domestic_language_ratio);
      s.disciplines.push_back(d);
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("synthetic spec: ") + e.what());
  }
}

}  // namespace recal
