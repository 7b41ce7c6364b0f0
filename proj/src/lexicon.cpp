#include "coindex/lexicon.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "coindex/agents.hpp"
#include "coindex/error.hpp"
#include "coindex/format.hpp"
#include "coindex/utf8.hpp"

namespace coindex {

namespace {

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
  std::size_t min_stem;  // characters that must remain before the suffix
  bool not_after_s;
};

constexpr std::array<SuffixRule, 6> kRules{{
    {"sses", "ss", 0, false},
    {"ies", "y", 0, false},
    {"ations", "ate", 0, false},
    {"ing", "", 3, false},
    {"ed", "", 3, false},
    {"s", "", 2, true},
}};

bool apply_first_rule(std::string& w) {
  for (const auto& rule : kRules) {
    if (!w.ends_with(rule.suffix)) continue;
    const std::size_t stem_len = w.size() - rule.suffix.size();
    if (stem_len < rule.min_stem) continue;
    if (rule.not_after_s && stem_len > 0 && w[stem_len - 1] == 's') continue;
    w.resize(stem_len);
    w.append(rule.replacement);
    return true;
  }
  return false;
}

bool is_link(std::string_view t) {
  return t.find('/') != std::string_view::npos || t.find("://") != std::string_view::npos;
}

}  // namespace

std::string_view to_string(ExtractionLevel level) {
  switch (level) {
    case ExtractionLevel::Grapheme: return "grapheme";
    case ExtractionLevel::Lexical: return "lexical";
    case ExtractionLevel::Syntactic: return "syntactic";
    case ExtractionLevel::Semantic: return "semantic";
    case ExtractionLevel::Pragmatic: return "pragmatic";
  }
  return "lexical";
}

std::optional<ExtractionLevel> parse_extraction_level(std::string_view s) {
  for (auto level : {ExtractionLevel::Grapheme, ExtractionLevel::Lexical,
                     ExtractionLevel::Syntactic, ExtractionLevel::Semantic,
                     ExtractionLevel::Pragmatic}) {
    if (to_string(level) == s) return level;
  }
  return std::nullopt;
}

std::string stem(std::string_view word) {
  std::string w(word);
  // Every rule shortens the word, so this terminates.
  while (apply_first_rule(w)) {
  }
  return w;
}

std::vector<ExtractedTerm> extract_terms(const KnowledgeBase& kb,
                                         std::span<const Token> tokens,
                                         ExtractionLevel level) {
  std::vector<ExtractedTerm> out;
  switch (level) {
    case ExtractionLevel::Pragmatic:
      throw Error(ErrorKind::UnimplementedLevel, "lexicon",
                  "pragmatic extraction is not implemented");

    case ExtractionLevel::Grapheme:
      for (const auto& tok : tokens) {
        const auto cps = utf8::code_points(tok.text);
        for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
          const char* begin = cps[i].data();
          const char* end = cps[i + 2].data() + cps[i + 2].size();
          out.push_back({std::string(begin, end), std::nullopt});
        }
      }
      return out;

    case ExtractionLevel::Lexical:
    case ExtractionLevel::Syntactic:
    case ExtractionLevel::Semantic:
      break;
  }

  for (const auto& tok : tokens) {
    if (tok.acronym || is_link(tok.text) || kb.is_stop_word(tok.text)) continue;
    const TermRecord* rec = kb.find_record(tok.text);
    if (level == ExtractionLevel::Lexical) {
      out.push_back({tok.text, std::nullopt});
    } else if (level == ExtractionLevel::Syntactic) {
      out.push_back({tok.text, rec ? std::optional(rec->category) : std::nullopt});
    } else {
      if (!rec) {
        out.push_back({tok.text, std::nullopt});
        continue;
      }
      out.push_back({rec->canonical, std::nullopt});
      for (const auto& linked : kb.quasi_synonyms(rec->canonical)) {
        const TermRecord* linked_rec = kb.find_record(linked);
        if (linked_rec && linked_rec->category == Category::Hyperonym) {
          out.push_back({linked, std::nullopt});
        }
      }
    }
  }
  return out;
}

ThresholdMode parse_threshold_mode(std::string_view s) {
  const auto colon = s.find(':');
  auto bad = [&]() -> ThresholdMode {
    throw Error(ErrorKind::MalformedInput, "lexicon",
                "threshold mode must be mincount:<c> or topn:<n>, got '" +
                    std::string(s) + "'");
  };
  if (colon == std::string_view::npos) return bad();
  const std::string_view name = s.substr(0, colon);
  const std::string_view arg = s.substr(colon + 1);
  if (name == "mincount") {
    double c = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), c);
    if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size() || c < 0) return bad();
    return MinCount{c};
  }
  if (name == "topn") {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size()) return bad();
    return TopN{n};
  }
  return bad();
}

std::string to_string(const ThresholdMode& mode) {
  if (const auto* m = std::get_if<MinCount>(&mode)) {
    return "mincount:" + format_number(m->min_count);
  }
  return "topn:" + std::to_string(std::get<TopN>(mode).n);
}

Vocabulary build_vocabulary(std::span<const IndexedDocument> docs,
                            const ThresholdMode& mode) {
  std::map<std::string, double> totals;
  for (const auto& doc : docs) {
    if (doc.routing != Routing::Index) continue;
    for (const auto& [term, entry] : doc.terms) {
      if (entry.status == TermStatus::Rejected) continue;
      totals[term] += static_cast<double>(entry.count);
    }
  }

  std::vector<std::pair<std::string, double>> ranked(totals.begin(), totals.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  if (const auto* m = std::get_if<MinCount>(&mode)) {
    std::erase_if(ranked, [&](const auto& p) { return p.second < m->min_count; });
  } else if (ranked.size() > std::get<TopN>(mode).n) {
    ranked.resize(std::get<TopN>(mode).n);
  }
  if (ranked.empty()) {
    throw Error(ErrorKind::EmptyVocabulary, "lexicon",
                "no term survives threshold " + to_string(mode));
  }

  Vocabulary vocab;
  for (auto& [term, score] : ranked) {
    vocab.terms.push_back(term);
    vocab.scores.emplace(term, score);
  }
  return vocab;
}

std::string vocabulary_tsv(const Vocabulary& vocab) {
  std::string out;
  for (const auto& term : vocab.terms) {
    out += term;
    out += '\t';
    out += format_number(vocab.scores.at(term));
    out += '\n';
  }
  return out;
}

}  // namespace coindex
