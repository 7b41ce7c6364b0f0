#include "coindex/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "coindex/error.hpp"
#include "coindex/utf8.hpp"

namespace coindex {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && utf8::is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && utf8::is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_punct(std::string_view s) {
  while (!s.empty() && utf8::is_ascii_punct(s.front())) s.remove_prefix(1);
  while (!s.empty() && utf8::is_ascii_punct(s.back())) s.remove_suffix(1);
  return s;
}

bool mixes_letters_and_digits(std::string_view s) {
  const bool digit = std::any_of(s.begin(), s.end(), utf8::is_ascii_digit);
  const bool letter = std::any_of(s.begin(), s.end(), utf8::is_letter_byte);
  return digit && letter;
}

bool all_caps(std::string_view s) {
  std::size_t letters = 0;
  for (char c : s) {
    if (utf8::is_ascii_upper(c)) {
      ++letters;
    } else if (utf8::is_letter_byte(c)) {
      return false;
    }
  }
  return letters >= 2;
}

[[noreturn]] void missing(std::string_view origin, std::string_view what) {
  throw Error(ErrorKind::MissingMetadata, "corpus",
              std::string(origin) + ": " + std::string(what));
}

}  // namespace

Document parse_document(std::string_view content, std::string_view origin) {
  Document doc;
  const char* keys[] = {"id:", "title:", "year:"};
  std::size_t pos = 0;
  for (const char* key : keys) {
    const std::size_t eol = content.find('\n', pos);
    std::string_view line = content.substr(pos, eol == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.starts_with(key)) missing(origin, std::string("missing '") + key + "' header");
    const std::string_view value = trim(line.substr(std::char_traits<char>::length(key)));
    if (key == keys[0]) {
      if (value.empty()) missing(origin, "empty id");
      doc.id = value;
    } else if (key == keys[1]) {
      doc.title = value;
    } else {
      int year = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), year);
      if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() || year <= 0) {
        missing(origin, "year must be a positive integer");
      }
      doc.year = year;
    }
    pos = eol == std::string_view::npos ? content.size() : eol + 1;
  }
  // Blank separator line, then the body.
  const std::size_t eol = content.find('\n', pos);
  std::string_view sep = content.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
  if (!trim(sep).empty()) missing(origin, "header must be followed by a blank line");
  doc.text = eol == std::string_view::npos ? std::string() : std::string(content.substr(eol + 1));
  return doc;
}

Corpus ingest(std::span<const std::filesystem::path> paths) {
  Corpus corpus;
  std::set<std::string> ids;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::UnreadableFile, "corpus", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Document doc = parse_document(buf.str(), path.string());
    if (!ids.insert(doc.id).second) {
      throw Error(ErrorKind::DuplicateId, "corpus",
                  "duplicate document id '" + doc.id + "' in " + path.string());
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<std::filesystem::path> list_corpus_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      out.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorKind::UnreadableFile, "corpus", "cannot list " + dir.string());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return out;
}

std::vector<Token> tokenize(const KnowledgeBase& kb, std::string_view text) {
  std::vector<Token> tokens;
  auto emit = [&](std::string_view word, bool acronym) {
    if (word.empty() || mixes_letters_and_digits(word)) return;
    tokens.push_back(Token{std::string(word), tokens.size(), acronym});
  };

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && utf8::is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !utf8::is_space(text[i])) ++i;
    if (start == i) break;

    const std::string_view raw = text.substr(start, i - start);
    const std::string lowered = utf8::to_lower(raw);
    const std::string core(strip_punct(lowered));

    std::optional<std::string> expansion = kb.expand_abbreviation(lowered);
    if (!expansion && !core.empty()) expansion = kb.expand_abbreviation(core);
    if (!expansion && !core.empty()) expansion = kb.expand_abbreviation(core + ".");

    if (expansion) {
      std::istringstream words(utf8::to_lower(*expansion));
      std::string w;
      while (words >> w) emit(strip_punct(w), false);
    } else {
      emit(core, all_caps(strip_punct(raw)));
    }
  }
  return tokens;
}

bool is_valid_token(std::string_view text) {
  if (text.empty()) return false;
  if (utf8::to_lower(text) != text) return false;
  if (utf8::is_ascii_punct(text.front()) || utf8::is_ascii_punct(text.back())) return false;
  if (std::any_of(text.begin(), text.end(), utf8::is_space)) return false;
  return !mixes_letters_and_digits(text);
}

}  // namespace coindex
