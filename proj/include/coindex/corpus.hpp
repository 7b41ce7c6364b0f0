#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coindex/kb.hpp"

namespace coindex {

struct Document {
  std::string id;
  std::string title;
  int year = 0;
  std::string text;
};

using Corpus = std::vector<Document>;

struct Token {
  std::string text;
  std::size_t position = 0;
  // Source form was all capitals (two or more letters), e.g. "UNESCO".
  bool acronym = false;

  friend bool operator==(const Token&, const Token&) = default;
};

// Parses one document file: `id:`, `title:`, `year:` header lines, a blank
// line, then the body.
Document parse_document(std::string_view content, std::string_view origin);

Corpus ingest(std::span<const std::filesystem::path> paths);

// All regular `*.txt` files directly under `dir`, sorted by file name.
std::vector<std::filesystem::path> list_corpus_dir(const std::filesystem::path& dir);

std::vector<Token> tokenize(const KnowledgeBase& kb, std::string_view text);

// Checks the token invariants: nonempty, lowercase, no edge punctuation and
// not a mixed letter/digit string.
bool is_valid_token(std::string_view text);

}  // namespace coindex
