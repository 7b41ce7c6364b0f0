#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coindex/corpus.hpp"
#include "coindex/kb.hpp"

namespace coindex {

struct IndexedDocument;

enum class ExtractionLevel { Grapheme, Lexical, Syntactic, Semantic, Pragmatic };

std::string_view to_string(ExtractionLevel level);
std::optional<ExtractionLevel> parse_extraction_level(std::string_view s);

// Suffix stripping. Rules, first match wins:
//   -sses -> -ss, -ies -> -y, -ations -> -ate,
//   -ing -> "" and -ed -> "" (stem of at least 3 remains),
//   -s -> "" (not after s, stem of at least 2 remains).
// Repeated until no rule fires, so stem(stem(w)) == stem(w).
std::string stem(std::string_view word);

struct ExtractedTerm {
  std::string text;
  std::optional<Category> category;  // filled at Syntactic level only

  friend bool operator==(const ExtractedTerm&, const ExtractedTerm&) = default;
};

std::vector<ExtractedTerm> extract_terms(const KnowledgeBase& kb,
                                         std::span<const Token> tokens,
                                         ExtractionLevel level);

struct MinCount {
  double min_count = 2;
};
struct TopN {
  std::size_t n = 0;
};
using ThresholdMode = std::variant<MinCount, TopN>;

// "mincount:2" or "topn:50".
ThresholdMode parse_threshold_mode(std::string_view s);
std::string to_string(const ThresholdMode& mode);

struct Vocabulary {
  std::vector<std::string> terms;  // descending score, ties lexicographic
  std::map<std::string, double> scores;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

Vocabulary build_vocabulary(std::span<const IndexedDocument> docs,
                            const ThresholdMode& mode);

// `term<TAB>score` lines in vocabulary order.
std::string vocabulary_tsv(const Vocabulary& vocab);

}  // namespace coindex
