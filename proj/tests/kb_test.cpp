#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "coindex/error.hpp"
#include "coindex/kb.hpp"
#include "support/oracles.hpp"

namespace coindex {
namespace {

constexpr const char* kHarborKb = R"({
  "classes": [{"id": "c1", "canonical": "port", "members": ["harbor", "port"]}],
  "categories": [{"surface": "harbor", "category": "noun"},
                 {"surface": "port", "category": "noun"}]
})";

constexpr const char* kQuayKb = R"({
  "classes": [
    {"id": "wharf", "canonical": "wharf", "members": ["wharf"]},
    {"id": "dock", "canonical": "dock", "members": ["dock"], "quasi": ["wharf"]},
    {"id": "lone", "canonical": "buoy", "members": ["buoy"]}
  ],
  "categories": [{"surface": "wharf", "category": "noun"},
                 {"surface": "dock", "category": "noun"},
                 {"surface": "buoy", "category": "noun"}]
})";

ErrorKind kind_of(const char* text) {
  try {
    KnowledgeBase::from_json_text(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::IoError;
}

TEST(KbTest, SynonymLookupGoesToCanonical) {
  const auto kb = KnowledgeBase::from_json_text(kHarborKb);
  EXPECT_EQ(kb.normalize_term("harbor"), "port");
  EXPECT_EQ(kb.normalize_term("port"), "port");
  EXPECT_EQ(kb.normalize_term("zeppelin"), std::nullopt);
  EXPECT_EQ(kb.find_record("harbor")->class_id, "c1");
}

TEST(KbTest, EmptyFileIsAnEmptyKb) {
  const auto kb = KnowledgeBase::from_json_text("{}");
  EXPECT_TRUE(kb.records().empty());
  EXPECT_TRUE(kb.classes().empty());
  EXPECT_TRUE(kb.stop_words().empty());
}

TEST(KbTest, MemberWithoutRecordIsInconsistent) {
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c1", "canonical": "dock", "members": ["dock"]}]})"),
            ErrorKind::InconsistentKb);
  try {
    KnowledgeBase::from_json_text(R"({"classes": [{"id": "c1", "canonical": "dock", "members": ["dock"]}]})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("dock"), std::string::npos);
  }
}

TEST(KbTest, RejectsMalformedAndInconsistentFiles) {
  EXPECT_EQ(kind_of("{"), ErrorKind::MalformedKb);
  EXPECT_EQ(kind_of(R"({"synonyms": []})"), ErrorKind::MalformedKb);
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "a", "members": ["a"], "x": 1}]})"),
            ErrorKind::MalformedKb);
  EXPECT_EQ(kind_of(R"({"stop_words": [1]})"), ErrorKind::MalformedKb);
  // Canonical not a member.
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "b", "members": ["a"]}],
                        "categories": [{"surface": "a", "category": "noun"}]})"),
            ErrorKind::InconsistentKb);
  // Self quasi link.
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "a", "members": ["a"], "quasi": ["c"]}],
                        "categories": [{"surface": "a", "category": "noun"}]})"),
            ErrorKind::InconsistentKb);
  // Dangling quasi link.
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "a", "members": ["a"], "quasi": ["z"]}],
                        "categories": [{"surface": "a", "category": "noun"}]})"),
            ErrorKind::InconsistentKb);
  // Canonical listed as a stop word.
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "a", "members": ["a"]}],
                        "categories": [{"surface": "a", "category": "noun"}],
                        "stop_words": ["a"]})"),
            ErrorKind::InconsistentKb);
  // Surface in two classes.
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "a", "members": ["a"]},
                                    {"id": "d", "canonical": "b", "members": ["b", "a"]}],
                        "categories": [{"surface": "a", "category": "noun"},
                                       {"surface": "b", "category": "noun"}]})"),
            ErrorKind::InconsistentKb);
  // Record outside any class, unknown category, uppercase surface.
  EXPECT_EQ(kind_of(R"({"categories": [{"surface": "a", "category": "noun"}]})"),
            ErrorKind::InconsistentKb);
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "a", "members": ["a"]}],
                        "categories": [{"surface": "a", "category": "gerund"}]})"),
            ErrorKind::InconsistentKb);
  EXPECT_EQ(kind_of(R"({"classes": [{"id": "c", "canonical": "Port", "members": ["Port"]}],
                        "categories": [{"surface": "Port", "category": "noun"}]})"),
            ErrorKind::InconsistentKb);
  // An expansion that would itself be expanded on a second pass.
  EXPECT_EQ(kind_of(R"({"abbreviations": {"intl.": "intl trade", "intl": "international"}})"),
            ErrorKind::InconsistentKb);
}

TEST(KbTest, QuasiSynonymsAreSymmetric) {
  const auto kb = KnowledgeBase::from_json_text(kQuayKb);
  EXPECT_EQ(kb.quasi_synonyms("wharf"), std::set<std::string>{"dock"});
  EXPECT_EQ(kb.quasi_synonyms("dock"), std::set<std::string>{"wharf"});
  EXPECT_TRUE(kb.quasi_synonyms("buoy").empty());
  EXPECT_THROW(kb.quasi_synonyms("zeppelin"), Error);
}

TEST(KbTest, LoadsBundledKnowledgeBase) {
  const auto kb = KnowledgeBase::load(std::filesystem::path(COINDEX_DATA_DIR) / "minicorpus" / "kb.json");
  EXPECT_EQ(kb.normalize_term("freight"), "cargo");
  EXPECT_EQ(kb.find_record("columbus")->category, Category::EntityPerson);
  EXPECT_EQ(kb.expand_abbreviation("intl."), "international");
  EXPECT_TRUE(kb.is_stop_word("the"));
}

TEST(KbTest, MissingFileIsUnreadable) {
  try {
    KnowledgeBase::load("/nonexistent/kb.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnreadableFile);
  }
}

// Random well-formed sources for the property tests below.
KbSource random_source(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> n_classes(0, 8);
  std::uniform_int_distribution<int> n_members(1, 4);
  std::uniform_int_distribution<int> cat(0, 11);
  std::bernoulli_distribution link(0.3);
  static const char* kCats[] = {"noun", "verb", "adjective", "homonym", "hyponym", "hyperonym",
                                "meronym", "contextual-expression", "entity-person",
                                "entity-place", "entity-organization", "entity-product"};
  KbSource src;
  const int classes = n_classes(gen);
  int word = 0;
  for (int c = 0; c < classes; ++c) {
    KbSource::ClassEntry e;
    e.id = "k" + std::to_string(c);
    const int members = n_members(gen);
    for (int m = 0; m < members; ++m) {
      const std::string w = "w" + std::to_string(word++);
      e.members.push_back(w);
      src.categories.push_back({w, kCats[cat(gen)]});
    }
    e.canonical = e.members[std::uniform_int_distribution<std::size_t>(0, e.members.size() - 1)(gen)];
    for (int other = 0; other < classes; ++other) {
      if (other != c && link(gen)) e.quasi.push_back("k" + std::to_string(other));
    }
    src.classes.push_back(std::move(e));
  }
  src.stop_words = {"the", "of"};
  src.abbreviations = {{"intl.", "international"}, {"u.s.", "united states"}};
  return src;
}

TEST(KbProperty, SaveLoadRoundTripAndOrderIndependence) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    KbSource src = random_source(gen);
    const KnowledgeBase kb(src);
    EXPECT_EQ(KnowledgeBase::from_json_text(kb.to_json_text()), kb);

    std::shuffle(src.classes.begin(), src.classes.end(), gen);
    std::shuffle(src.categories.begin(), src.categories.end(), gen);
    for (auto& c : src.classes) std::shuffle(c.members.begin(), c.members.end(), gen);
    EXPECT_EQ(KnowledgeBase(src), kb);
  }
}

TEST(KbProperty, NormalizationIsIdempotentAndClassWide) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const KnowledgeBase kb(random_source(gen));
    for (const auto& [surface, rec] : kb.records()) {
      const auto once = kb.normalize_term(surface);
      ASSERT_TRUE(once.has_value());
      EXPECT_EQ(kb.normalize_term(*once), once);
    }
    for (const auto& [id, cls] : kb.classes()) {
      for (const auto& m : cls.members) EXPECT_EQ(kb.normalize_term(m), cls.canonical);
      EXPECT_FALSE(kb.quasi_synonyms(cls.canonical).contains(cls.canonical));
    }
  }
}

}  // namespace
}  // namespace coindex
