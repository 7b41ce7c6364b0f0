#include "coindex/eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "coindex/error.hpp"
#include "coindex/utf8.hpp"

namespace coindex {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

GoldStandard parse_gold(std::string_view text) {
  GoldStandard gold;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorKind::MalformedInput, "eval",
                  "gold line " + std::to_string(line_no) + " is not doc_id<TAB>term");
    }
    const std::string term(line.substr(tab + 1));
    if (utf8::to_lower(term) != term) {
      throw Error(ErrorKind::MalformedInput, "eval",
                  "gold line " + std::to_string(line_no) + ": term '" + term + "' is not lowercase");
    }
    gold.per_doc[std::string(line.substr(0, tab))].insert(term);
  }
  return gold;
}

GoldStandard load_gold(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, "eval", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gold(buf.str());
}

PrecisionRecall precision_recall(const DocTermSets& produced, const GoldStandard& gold,
                                 Averaging averaging) {
  const bool overlap = std::any_of(produced.begin(), produced.end(),
                                   [&](const auto& p) { return gold.per_doc.contains(p.first); });
  if (!overlap) {
    throw Error(ErrorKind::NoOverlap, "eval", "produced and gold share no document");
  }

  std::set<std::string> docs;
  for (const auto& [d, terms] : produced) docs.insert(d);
  for (const auto& [d, terms] : gold.per_doc) docs.insert(d);

  static const std::set<std::string> kEmpty;
  std::size_t hits = 0;
  std::size_t n_produced = 0;
  std::size_t n_gold = 0;
  double p_sum = 0;
  double r_sum = 0;
  for (const auto& d : docs) {
    const auto pit = produced.find(d);
    const auto git = gold.per_doc.find(d);
    const auto& p = pit == produced.end() ? kEmpty : pit->second;
    const auto& g = git == gold.per_doc.end() ? kEmpty : git->second;
    const auto h = static_cast<std::size_t>(
        std::count_if(p.begin(), p.end(), [&](const auto& t) { return g.contains(t); }));
    hits += h;
    n_produced += p.size();
    n_gold += g.size();
    p_sum += ratio(h, p.size());
    r_sum += ratio(h, g.size());
  }

  if (averaging == Averaging::Macro) {
    const auto n = static_cast<double>(docs.size());
    return {p_sum / n, r_sum / n};
  }
  return {ratio(hits, n_produced), ratio(hits, n_gold)};
}

}  // namespace coindex
