#include "coindex/kb.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "coindex/error.hpp"
#include "coindex/utf8.hpp"

namespace coindex {

namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<Category, std::string_view>, 12> kCategoryNames{{
    {Category::Noun, "noun"},
    {Category::Verb, "verb"},
    {Category::Adjective, "adjective"},
    {Category::Homonym, "homonym"},
    {Category::Hyponym, "hyponym"},
    {Category::Hyperonym, "hyperonym"},
    {Category::Meronym, "meronym"},
    {Category::ContextualExpression, "contextual-expression"},
    {Category::EntityPerson, "entity-person"},
    {Category::EntityPlace, "entity-place"},
    {Category::EntityOrganization, "entity-organization"},
    {Category::EntityProduct, "entity-product"},
}};

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::MalformedKb, "kb", msg);
}

[[noreturn]] void inconsistent(const std::string& msg) {
  throw Error(ErrorKind::InconsistentKb, "kb", msg);
}

bool is_clean_word(std::string_view s) {
  if (s.empty()) return false;
  if (std::any_of(s.begin(), s.end(), utf8::is_space)) return false;
  return utf8::to_lower(s) == s;
}

void require_clean(std::string_view s, std::string_view what) {
  if (!is_clean_word(s)) {
    inconsistent(std::string(what) + " '" + std::string(s) +
                 "' must be nonempty, lowercase and whitespace-free");
  }
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  if (!obj.is_object()) malformed(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      malformed("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

std::string get_string(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    malformed(std::string(where) + " needs string field '" + key + "'");
  }
  return it->get<std::string>();
}

std::vector<std::string> get_string_array(const json& obj, const char* key,
                                          std::string_view where,
                                          bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) malformed(std::string(where) + " needs array field '" + key + "'");
    return {};
  }
  if (!it->is_array()) malformed(std::string(where) + "." + key + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) malformed(std::string(where) + "." + key + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

KbSource parse_source(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  check_keys(doc, {"classes", "categories", "stop_words", "abbreviations"}, "kb");

  KbSource src;
  if (auto it = doc.find("classes"); it != doc.end()) {
    if (!it->is_array()) malformed("classes must be an array");
    for (const auto& c : *it) {
      check_keys(c, {"id", "canonical", "members", "quasi"}, "class");
      KbSource::ClassEntry entry;
      entry.id = get_string(c, "id", "class");
      entry.canonical = get_string(c, "canonical", "class " + entry.id);
      entry.members = get_string_array(c, "members", "class " + entry.id, true);
      entry.quasi = get_string_array(c, "quasi", "class " + entry.id, false);
      src.classes.push_back(std::move(entry));
    }
  }
  if (auto it = doc.find("categories"); it != doc.end()) {
    if (!it->is_array()) malformed("categories must be an array");
    for (const auto& c : *it) {
      check_keys(c, {"surface", "category"}, "category entry");
      src.categories.push_back({get_string(c, "surface", "category entry"),
                                get_string(c, "category", "category entry")});
    }
  }
  src.stop_words = get_string_array(doc, "stop_words", "kb", false);
  if (auto it = doc.find("abbreviations"); it != doc.end()) {
    if (!it->is_object()) malformed("abbreviations must be an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) malformed("abbreviation '" + key + "' must map to a string");
      src.abbreviations.emplace(key, value.get<std::string>());
    }
  }
  return src;
}

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [cat, name] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "noun";
}

std::optional<Category> parse_category(std::string_view s) {
  for (const auto& [cat, name] : kCategoryNames) {
    if (name == s) return cat;
  }
  return std::nullopt;
}

KnowledgeBase::KnowledgeBase(const KbSource& source) {
  std::map<std::string, std::string, std::less<>> member_class;

  for (const auto& entry : source.classes) {
    if (entry.id.empty()) inconsistent("class with empty id");
    if (classes_.contains(entry.id)) inconsistent("duplicate class id '" + entry.id + "'");
    if (entry.members.empty()) inconsistent("class '" + entry.id + "' has no members");

    SynonymClass cls;
    cls.class_id = entry.id;
    cls.canonical = entry.canonical;
    for (const auto& m : entry.members) {
      require_clean(m, "member of class " + entry.id);
      auto [it, inserted] = member_class.emplace(m, entry.id);
      if (!inserted && it->second != entry.id) {
        inconsistent("surface '" + m + "' belongs to classes '" + it->second +
                     "' and '" + entry.id + "'");
      }
      cls.members.insert(m);
    }
    if (!cls.members.contains(cls.canonical)) {
      inconsistent("canonical '" + cls.canonical + "' of class '" + entry.id +
                   "' is not a member");
    }
    for (const auto& q : entry.quasi) {
      if (q == entry.id) inconsistent("class '" + entry.id + "' is quasi-linked to itself");
      cls.quasi_synonym_of.insert(q);
    }
    if (canonical_to_class_.contains(cls.canonical)) {
      inconsistent("canonical '" + cls.canonical + "' shared by two classes");
    }
    canonical_to_class_.emplace(cls.canonical, cls.class_id);
    classes_.emplace(cls.class_id, std::move(cls));
  }

  for (const auto& [id, cls] : classes_) {
    for (const auto& q : cls.quasi_synonym_of) {
      auto target = classes_.find(q);
      if (target == classes_.end()) {
        inconsistent("class '" + id + "' is quasi-linked to unknown class '" + q + "'");
      }
      quasi_closure_[cls.canonical].insert(target->second.canonical);
      quasi_closure_[target->second.canonical].insert(cls.canonical);
    }
  }

  for (const auto& entry : source.categories) {
    require_clean(entry.surface, "category surface");
    auto cat = parse_category(entry.category);
    if (!cat) {
      inconsistent("surface '" + entry.surface + "' has unknown category '" +
                   entry.category + "'");
    }
    auto cls = member_class.find(entry.surface);
    if (cls == member_class.end()) {
      inconsistent("record '" + entry.surface + "' belongs to no class");
    }
    if (records_.contains(entry.surface)) {
      inconsistent("surface '" + entry.surface + "' has more than one record");
    }
    records_.emplace(entry.surface,
                     TermRecord{entry.surface, classes_.at(cls->second).canonical,
                                *cat, cls->second});
  }
  for (const auto& [surface, class_id] : member_class) {
    if (!records_.contains(surface)) {
      inconsistent("class '" + class_id + "' lists '" + surface +
                   "' but no record exists for it");
    }
  }

  for (const auto& w : source.stop_words) {
    require_clean(w, "stop word");
    if (canonical_to_class_.contains(w)) {
      inconsistent("canonical '" + w + "' is listed as a stop word");
    }
    stop_words_.insert(w);
  }

  for (const auto& [key, expansion] : source.abbreviations) {
    require_clean(key, "abbreviation");
    if (expansion.empty()) inconsistent("abbreviation '" + key + "' has empty expansion");
    abbreviations_.emplace(key, expansion);
  }
  // Expansion output must be stable under a second tokenization pass.
  for (const auto& [key, expansion] : abbreviations_) {
    std::istringstream words(utf8::to_lower(expansion));
    std::string w;
    while (words >> w) {
      auto first = std::find_if_not(w.begin(), w.end(), utf8::is_ascii_punct);
      auto last = std::find_if_not(w.rbegin(), w.rend(), utf8::is_ascii_punct).base();
      const std::string core = first < last ? std::string(first, last) : std::string();
      if (core.empty()) continue;
      if (abbreviations_.contains(w) || abbreviations_.contains(core) ||
          abbreviations_.contains(core + ".")) {
        inconsistent("expansion of abbreviation '" + key +
                     "' contains another abbreviation '" + w + "'");
      }
    }
  }
}

KnowledgeBase KnowledgeBase::from_json_text(std::string_view text) {
  return KnowledgeBase(parse_source(text));
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, "kb", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string KnowledgeBase::to_json_text() const {
  json classes = json::array();
  for (const auto& [id, cls] : classes_) {
    classes.push_back({{"id", id},
                       {"canonical", cls.canonical},
                       {"members", cls.members},
                       {"quasi", cls.quasi_synonym_of}});
  }
  json categories = json::array();
  for (const auto& [surface, rec] : records_) {
    categories.push_back({{"surface", surface}, {"category", to_string(rec.category)}});
  }
  json doc = {{"classes", classes},
              {"categories", categories},
              {"stop_words", stop_words_},
              {"abbreviations", abbreviations_}};
  return doc.dump(2) + "\n";
}

void KnowledgeBase::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "kb", "cannot write " + path.string());
  out << to_json_text();
}

std::optional<std::string> KnowledgeBase::normalize_term(std::string_view surface) const {
  auto it = records_.find(surface);
  if (it == records_.end()) return std::nullopt;
  return it->second.canonical;
}

std::set<std::string> KnowledgeBase::quasi_synonyms(std::string_view canonical) const {
  if (!canonical_to_class_.contains(canonical)) {
    throw Error(ErrorKind::UnknownTerm, "kb",
                "'" + std::string(canonical) + "' is not a class canonical");
  }
  auto it = quasi_closure_.find(canonical);
  if (it == quasi_closure_.end()) return {};
  return it->second;
}

const TermRecord* KnowledgeBase::find_record(std::string_view surface) const {
  auto it = records_.find(surface);
  return it == records_.end() ? nullptr : &it->second;
}

const SynonymClass* KnowledgeBase::find_class(std::string_view class_id) const {
  auto it = classes_.find(class_id);
  return it == classes_.end() ? nullptr : &it->second;
}

const SynonymClass* KnowledgeBase::class_of_canonical(std::string_view canonical) const {
  auto it = canonical_to_class_.find(canonical);
  return it == canonical_to_class_.end() ? nullptr : find_class(it->second);
}

bool KnowledgeBase::is_stop_word(std::string_view word) const {
  return stop_words_.contains(word);
}

std::optional<std::string> KnowledgeBase::expand_abbreviation(std::string_view token) const {
  auto it = abbreviations_.find(token);
  if (it == abbreviations_.end()) return std::nullopt;
  return it->second;
}

}  // namespace coindex
