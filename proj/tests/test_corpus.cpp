#include <gtest/gtest.h>

#include "support.hpp"

using namespace recal;
using namespace recal::testing;

namespace {

const char* kResearchers =
    "researcher_id,discipline,has_dsc,last_degree_year\n"
    "r1,alpha,true,2010\n"
    "r2,beta,false,\n";
const char* kPublications =
    "pub_id,year,pub_type,language,wos_indexed,scopus_indexed,impact_factor,author_ids,discipline\n"
    "p1,2015,journal_article,en,true,true,2.5,r1;x1,alpha\n"
    "p2,2016,book,hu,false,false,,r2,beta\n"
    "p3,2017,conference_paper,en,false,true,,r1;r2;x2,\n";
const char* kCitations =
    "citation_id,cited_pub_id,citing_year,citing_author_ids,citing_wos_indexed\n"
    "c1,p1,2018,y1;y2,true\n";

std::vector<Violation> violations_of(const std::string& r, const std::string& p, const std::string& c) {
  return try_load_corpus_text(r, p, c, small_registry()).violations;
}

}  // namespace

TEST(LoadCorpus, WellFormedFilesKeepEveryRecord) {
  auto corpus = load_corpus_text(kResearchers, kPublications, kCitations, small_registry());
  EXPECT_EQ(corpus.researchers().size(), 2u);
  EXPECT_EQ(corpus.publications().size(), 3u);
  EXPECT_EQ(corpus.citations().size(), 1u);
  const auto* p1 = corpus.find_publication("p1");
  ASSERT_NE(p1, nullptr);
  EXPECT_EQ(p1->author_ids, (std::vector<std::string>{"r1", "x1"}));
  EXPECT_DOUBLE_EQ(*p1->impact_factor, 2.5);
  EXPECT_FALSE(corpus.researcher("r2").last_degree_year.has_value());
}

TEST(LoadCorpus, MissingDisciplineIsInheritedFromFirstCorpusAuthor) {
  auto corpus = load_corpus_text(kResearchers, kPublications, kCitations, small_registry());
  EXPECT_EQ(corpus.find_publication("p3")->discipline, DisciplineId("alpha"));
}

TEST(LoadCorpus, ShippedSmallFixtureLoads) {
  auto corpus = load_corpus(corpus_paths_in(data_path("small")), earth_sciences::registry());
  EXPECT_EQ(corpus.researchers().size(), 2u);
  EXPECT_EQ(corpus.publications().size(), 3u);
  EXPECT_EQ(corpus.citations().size(), 1u);
}

TEST(LoadCorpus, UnknownDisciplineNamesTheRow) {
  std::string pubs = std::string(kPublications) + "p4,2015,book,hu,false,false,,r1,astrology\n";
  auto v = violations_of(kResearchers, pubs, kCitations);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].file, "publications");
  EXPECT_EQ(v[0].row, 5u);
  EXPECT_EQ(v[0].column, "discipline");
  EXPECT_NE(v[0].message.find("astrology"), std::string::npos);
}

TEST(LoadCorpus, DanglingCitationIsReported) {
  std::string cites = std::string(kCitations) + "c2,p99,2018,y3,false\n";
  auto v = violations_of(kResearchers, kPublications, cites);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].column, "cited_pub_id");
  EXPECT_NE(v[0].message.find("dangling"), std::string::npos);
  EXPECT_THROW(load_corpus_text(kResearchers, kPublications, cites, small_registry()), CorpusValidationError);
}

TEST(LoadCorpus, DuplicateIdsAndEmptyAuthorLists) {
  std::string res = std::string(kResearchers) + "r1,alpha,false,\n";
  std::string pubs = std::string(kPublications) + "p1,2015,book,hu,false,false,,r1,alpha\n" +
                     "p5,2015,book,hu,false,false,,,alpha\n";
  auto v = violations_of(res, pubs, kCitations);
  auto has = [&](const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.message.find(needle) != std::string::npos; });
  };
  EXPECT_TRUE(has("duplicate researcher id 'r1'"));
  EXPECT_TRUE(has("duplicate publication id 'p1'"));
  EXPECT_TRUE(has("empty author list"));
}

TEST(LoadCorpus, ParseErrorsReportRowAndColumn) {
  std::string pubs = std::string(kPublications) + "p4,20x5,book,hu,maybe,false,,r1,alpha\n";
  auto v = violations_of(kResearchers, pubs, kCitations);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].row, 5u);
  EXPECT_EQ(v[0].column, "year");
  EXPECT_EQ(v[1].column, "wos_indexed");
}

TEST(LoadCorpus, RecordRulesOnImpactFactorAndBylines) {
  std::string pubs = std::string(kPublications) + "p4,2015,book,hu,false,false,1.5,r1,alpha\n" +
                     "p5,2015,journal_article,hu,false,false,-1,r1;r1,alpha\n";
  auto v = violations_of(kResearchers, pubs, kCitations);
  EXPECT_EQ(v.size(), 3u);
}

TEST(LoadCorpus, DegreeYearAfterWindowEndIsRejected) {
  CorpusOptions opt;
  opt.max_degree_year = 2009;
  auto r = try_load_corpus_text(kResearchers, kPublications, kCitations, small_registry(), opt);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].column, "last_degree_year");
}

TEST(LoadCorpus, MissingHeaderColumnAndWrongFieldCount) {
  auto v = violations_of("researcher_id,discipline,has_dsc\nr1,alpha,true\n", kPublications, kCitations);
  EXPECT_EQ(v.front().column, "last_degree_year");
  v = violations_of(std::string(kResearchers) + "r3,alpha\n", kPublications, kCitations);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v[0].message.find("expected 4 fields"), std::string::npos);
}

TEST(LoadCorpus, UnreadableFileIsAnIoError) {
  CorpusPaths paths{"/nonexistent/r.csv", "/nonexistent/p.csv", "/nonexistent/c.csv"};
  EXPECT_THROW(load_corpus(paths, small_registry()), IoError);
}

TEST(LoadCorpus, LineDelimitedObjectsAreEquivalent) {
  auto csv = load_corpus_text(kResearchers, kPublications, kCitations, small_registry());
  auto text = serialize_jsonl(csv);
  auto jsonl = load_corpus_text(text.researchers, text.publications, text.citations, small_registry());
  ASSERT_EQ(jsonl.publications().size(), csv.publications().size());
  for (std::size_t i = 0; i < csv.publications().size(); ++i)
    EXPECT_EQ(jsonl.publications()[i], csv.publications()[i]);
  EXPECT_EQ(jsonl.researchers()[1], csv.researchers()[1]);
  EXPECT_EQ(jsonl.citations()[0], csv.citations()[0]);

  // Hand-written objects may use a ';'-joined string for author lists.
  auto one = load_corpus_text(
      R"({"researcher_id":"r1","discipline":"alpha","has_dsc":false,"last_degree_year":null})",
      R"({"pub_id":"p1","year":2015,"pub_type":"book","language":"hu","wos_indexed":false,"scopus_indexed":false,"impact_factor":null,"author_ids":"r1;x1","discipline":"alpha"})",
      "", small_registry());
  EXPECT_EQ(one.publications()[0].author_ids.size(), 2u);
}

TEST(LoadCorpus, RoundTripIsRecordWiseIdentical) {
  for (std::uint32_t seed = 1; seed <= 60; ++seed) {
    auto rec = random_records(seed);
    auto corpus = build(rec);
    for (auto text : {serialize_dsv(corpus), serialize_jsonl(corpus)}) {
      auto again = load_corpus_text(text.researchers, text.publications, text.citations, small_registry());
      ASSERT_TRUE(std::equal(again.researchers().begin(), again.researchers().end(), corpus.researchers().begin(),
                             corpus.researchers().end()));
      ASSERT_TRUE(std::equal(again.publications().begin(), again.publications().end(),
                             corpus.publications().begin(), corpus.publications().end()))
          << "seed " << seed;
      ASSERT_TRUE(std::equal(again.citations().begin(), again.citations().end(), corpus.citations().begin(),
                             corpus.citations().end()));
    }
  }
}

TEST(LoadCorpus, QuotedFieldsAndColumnOrder) {
  std::string res = "discipline,researcher_id,last_degree_year,has_dsc\nalpha,\"r,1\",2001,true\n";
  auto c = load_corpus_text(res, "pub_id,year,pub_type,language,wos_indexed,scopus_indexed,impact_factor,author_ids,discipline\n",
                            "citation_id,cited_pub_id,citing_year,citing_author_ids,citing_wos_indexed\n",
                            small_registry());
  EXPECT_EQ(c.researchers()[0].researcher_id, "r,1");
  EXPECT_EQ(*c.researchers()[0].last_degree_year, 2001);
}

// ---------------------------------------------------------------------------

TEST(IndependentCitations, SharedAuthorIsExcludedDisjointIsIncluded) {
  Records r;
  r.researchers.push_back({"a", DisciplineId("alpha"), false, std::nullopt});
  r.publications.push_back(pub("p", 2015, {"a", "b"}));
  r.citations.push_back(cite("self", "p", 2016, {"z", "b"}));
  r.citations.push_back(cite("free", "p", 2016, {"y", "z"}));
  auto corpus = build(r);
  auto got = independent_citations(corpus, *corpus.find_publication("p"), {2014, 2019});
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].citation_id, "free");
}

TEST(IndependentCitations, CitingYearWindowIsInclusive) {
  Records r;
  r.researchers.push_back({"a", DisciplineId("alpha"), false, std::nullopt});
  r.publications.push_back(pub("p", 2013, {"a"}));
  r.citations.push_back(cite("c2013", "p", 2013, {"x"}));
  r.citations.push_back(cite("c2015", "p", 2015, {"x"}));
  r.citations.push_back(cite("c2020", "p", 2020, {"x"}));
  auto corpus = build(r);
  auto got = independent_citations(corpus, *corpus.find_publication("p"), {2014, 2019});
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].citation_id, "c2015");
}

TEST(IndependentCitations, SubsetAndExclusionProperty) {
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    auto rec = random_records(seed);
    auto corpus = build(rec);
    YearRange w{2014, 2019};
    for (const auto& p : corpus.publications()) {
      auto indep = independent_citations(corpus, p, w);
      std::set<std::string> ids;
      for (const auto& c : indep) ids.insert(c.citation_id);
      for (const auto& c : corpus.citations()) {
        if (c.cited_pub_id != p.pub_id) {
          ASSERT_FALSE(ids.count(c.citation_id));
          continue;
        }
        bool in_window = w.contains(c.citing_year);
        bool shares = std::any_of(c.citing_author_ids.begin(), c.citing_author_ids.end(),
                                  [&](const std::string& a) { return p.has_author(a); });
        if (ids.count(c.citation_id)) {
          ASSERT_TRUE(in_window && !shares);
        } else if (in_window) {
          ASSERT_TRUE(shares) << "seed " << seed << " citation " << c.citation_id;
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------

TEST(CorpusStats, FourPublicationsByHand) {
  Records r;
  r.publications.push_back(pub("p1", 2015, {"a"}));
  r.publications.push_back(pub("p2", 2015, {"a", "b"}));
  r.publications.push_back(pub("p3", 2016, {"a", "c"}));
  r.publications.push_back(pub("p4", 2017, {"a", "b", "c", "d", "e"}));
  auto s = corpus_stats(build(r), {2014, 2018});
  const auto* alpha = s.find(DisciplineId("alpha"));
  EXPECT_EQ(alpha->pub_count, 4);
  EXPECT_EQ(alpha->multi_authored_count, 3);
  EXPECT_DOUBLE_EQ(alpha->multi_ratio(), 75.0);
  EXPECT_DOUBLE_EQ(*alpha->avg_coauthors_per_multi(), 3.0);
}

TEST(CorpusStats, AllSingleAuthoredHasNoAverage) {
  Records r;
  r.publications.push_back(pub("p1", 2015, {"a"}, "beta"));
  r.publications.push_back(pub("p2", 2016, {"b"}, "beta"));
  auto s = corpus_stats(build(r), {2014, 2018});
  const auto* beta = s.find(DisciplineId("beta"));
  EXPECT_EQ(beta->multi_ratio(), 0.0);
  EXPECT_FALSE(beta->avg_coauthors_per_multi().has_value());
  EXPECT_EQ(s.find(DisciplineId("gamma"))->pub_count, 0);
}

TEST(CorpusStats, SocialGeographyRowOfObservedTable) {
  // 3,277 publications, 2,199 multi-authored carrying 8,173 authors in total.
  std::vector<PublicationRecord> pubs;
  long long extra = 8173 - 3 * 2199;
  for (int i = 0; i < 3277; ++i) {
    std::size_t n = 1;
    if (i < 2199) n = 3 + (i < extra ? 1 : 0);
    std::vector<std::string> authors;
    for (std::size_t a = 0; a < n; ++a) authors.push_back("a" + std::to_string(a));
    pubs.push_back(pub("p" + std::to_string(i), 2014 + i % 5, authors, "social_geography"));
  }
  auto s = corpus_stats(pubs, earth_sciences::registry(), {2014, 2018});
  const auto* row = s.find(DisciplineId("social_geography"));
  EXPECT_EQ(row->coauthor_total, 8173);
  EXPECT_NEAR(row->multi_ratio(), 67.10, 0.005);
  EXPECT_NEAR(*row->avg_coauthors_per_multi(), 3.72, 0.005);
}

TEST(CorpusStats, AdditiveOverPartitionsAndBounded) {
  for (std::uint32_t seed = 1; seed <= 100; ++seed) {
    auto rec = random_records(seed);
    auto corpus = build(rec);
    YearRange w{2014, 2018};
    auto whole = corpus_stats(corpus, w);
    std::vector<PublicationRecord> even, odd;
    for (std::size_t i = 0; i < corpus.publications().size(); ++i)
      (i % 2 ? odd : even).push_back(corpus.publications()[i]);
    auto a = corpus_stats(even, corpus.registry(), w);
    auto b = corpus_stats(odd, corpus.registry(), w);
    for (std::size_t i = 0; i < whole.rows.size(); ++i) {
      auto sum = a.rows[i];
      sum += b.rows[i];
      EXPECT_EQ(sum.pub_count, whole.rows[i].pub_count);
      EXPECT_EQ(sum.multi_authored_count, whole.rows[i].multi_authored_count);
      EXPECT_EQ(sum.coauthor_total, whole.rows[i].coauthor_total);
      EXPECT_GE(whole.rows[i].multi_ratio(), 0.0);
      EXPECT_LE(whole.rows[i].multi_ratio(), 100.0);
      if (auto avg = whole.rows[i].avg_coauthors_per_multi()) {
        EXPECT_GE(*avg, 2.0);
      }
    }
  }
}

TEST(CorpusStats, EmptyWindowIsRejected) {
  EXPECT_THROW(corpus_stats(build({}), {2019, 2014}), ValidationError);
}
