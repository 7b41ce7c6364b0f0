#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace coindex {

enum class Category {
  Noun,
  Verb,
  Adjective,
  Homonym,
  Hyponym,
  Hyperonym,
  Meronym,
  ContextualExpression,
  EntityPerson,
  EntityPlace,
  EntityOrganization,
  EntityProduct,
};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

struct TermRecord {
  std::string surface;
  std::string canonical;
  Category category = Category::Noun;
  std::string class_id;

  friend bool operator==(const TermRecord&, const TermRecord&) = default;
};

// One hyperedge of the synonym hypergraph.
struct SynonymClass {
  std::string class_id;
  std::set<std::string> members;
  std::string canonical;
  std::set<std::string> quasi_synonym_of;

  friend bool operator==(const SynonymClass&, const SynonymClass&) = default;
};

// Plain input to KnowledgeBase construction; mirrors the JSON file layout.
struct KbSource {
  struct ClassEntry {
    std::string id;
    std::string canonical;
    std::vector<std::string> members;
    std::vector<std::string> quasi;
  };
  struct CategoryEntry {
    std::string surface;
    std::string category;
  };
  std::vector<ClassEntry> classes;
  std::vector<CategoryEntry> categories;
  std::vector<std::string> stop_words;
  std::map<std::string, std::string> abbreviations;
};

/// Immutable, validated ontology: term records, synonym classes with their
/// quasi-synonym links, stop list and abbreviation map.
///
/// Validation rules (violations raise InconsistentKb naming the offender):
///   - every class member has exactly one category record, and every record
///     belongs to exactly one class;
///   - the canonical of a class is one of its members;
///   - quasi links name existing classes other than the class itself;
///   - no canonical is a stop word;
///   - surfaces, stop words and abbreviation keys are lowercase, nonempty
///     and whitespace-free;
///   - no word of an abbreviation expansion is itself an abbreviation key.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(const KbSource& source);

  static KnowledgeBase load(const std::filesystem::path& path);
  static KnowledgeBase from_json_text(std::string_view text);

  std::string to_json_text() const;
  void save(const std::filesystem::path& path) const;

  std::optional<std::string> normalize_term(std::string_view surface) const;

  // Canonicals one quasi link away, either direction. Throws UnknownTerm if
  // `canonical` is not the canonical of a class.
  std::set<std::string> quasi_synonyms(std::string_view canonical) const;

  const TermRecord* find_record(std::string_view surface) const;
  const SynonymClass* find_class(std::string_view class_id) const;
  const SynonymClass* class_of_canonical(std::string_view canonical) const;

  bool is_stop_word(std::string_view word) const;
  std::optional<std::string> expand_abbreviation(std::string_view token) const;

  const std::map<std::string, TermRecord, std::less<>>& records() const {
    return records_;
  }
  const std::map<std::string, SynonymClass, std::less<>>& classes() const {
    return classes_;
  }
  const std::set<std::string, std::less<>>& stop_words() const {
    return stop_words_;
  }
  const std::map<std::string, std::string, std::less<>>& abbreviations() const {
    return abbreviations_;
  }

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    return a.records_ == b.records_ && a.classes_ == b.classes_ &&
           a.stop_words_ == b.stop_words_ &&
           a.abbreviations_ == b.abbreviations_;
  }

 private:
  std::map<std::string, TermRecord, std::less<>> records_;
  std::map<std::string, SynonymClass, std::less<>> classes_;
  std::map<std::string, std::string, std::less<>> canonical_to_class_;
  std::map<std::string, std::set<std::string>, std::less<>> quasi_closure_;
  std::set<std::string, std::less<>> stop_words_;
  std::map<std::string, std::string, std::less<>> abbreviations_;
};

}  // namespace coindex
