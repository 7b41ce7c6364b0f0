#include "coindex/agents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

#include "coindex/error.hpp"
#include "coindex/utf8.hpp"

namespace coindex {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

char status_letter(TermStatus s) {
  switch (s) {
    case TermStatus::Initial: return 'I';
    case TermStatus::Accepted: return 'T';
    case TermStatus::Rejected: return 'F';
    case TermStatus::MorphError: return 'J';
  }
  return 'I';
}

std::optional<TermStatus> parse_status_letter(char c) {
  switch (c) {
    case 'I': return TermStatus::Initial;
    case 'T': return TermStatus::Accepted;
    case 'F': return TermStatus::Rejected;
    case 'J': return TermStatus::MorphError;
    default: return std::nullopt;
  }
}

std::string_view to_string(Routing r) {
  switch (r) {
    case Routing::Index: return "Index";
    case Routing::StoreOnly: return "StoreOnly";
    case Routing::Discard: return "Discard";
  }
  return "Discard";
}

std::optional<Routing> parse_routing(std::string_view s) {
  for (auto r : {Routing::Index, Routing::StoreOnly, Routing::Discard}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::map<std::string, std::size_t> IndexedDocument::accepted_counts() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [term, entry] : terms) {
    if (entry.status == TermStatus::Accepted) out.emplace(term, entry.count);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Blackboard

void Blackboard::append(BlackboardEntry entry) {
  last_vector_.clear();
  for (const auto& [term, n] : entry.terms) last_vector_.emplace(term, static_cast<double>(n));
  entries_.push_back(std::move(entry));
}

std::string Blackboard::to_xml() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<blackboard>\n";
  for (const auto& e : entries_) {
    out += "  <doc id=\"" + xml_escape(e.doc_id) + "\" routing=\"" +
           std::string(to_string(e.routing)) + "\" year=\"" + std::to_string(e.year) + "\">\n";
    for (const auto& [term, n] : e.terms) {
      out += "    <term c=\"" + xml_escape(term) + "\" n=\"" + std::to_string(n) + "\"/>\n";
    }
    out += "  </doc>\n";
  }
  out += "</blackboard>\n";
  return out;
}

void Blackboard::write(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "agents", "cannot write " + tmp.string());
    out << to_xml();
    if (!out) throw Error(ErrorKind::IoError, "agents", "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::IoError, "agents", "cannot replace " + path.string());
}

// ---------------------------------------------------------------------------
// TermIndex

void TermIndex::add(const IndexedDocument& doc) {
  for (const auto& [term, entry] : doc.terms) {
    if (entry.status == TermStatus::Rejected) continue;
    auto& list = postings_[term];
    // Newest year first; among equal years the later arrival goes first.
    auto pos = std::find_if(list.begin(), list.end(),
                            [&](const Posting& p) { return p.year <= doc.year; });
    list.insert(pos, Posting{doc.doc_id, doc.year, entry.count});
  }
}

bool TermIndex::contains(std::string_view term) const { return postings_.find(term) != postings_.end(); }

std::span<const Posting> TermIndex::postings(std::string_view term) const {
  auto it = postings_.find(term);
  if (it == postings_.end()) return {};
  return it->second;
}

std::set<std::string> TermIndex::terms() const {
  std::set<std::string> out;
  for (const auto& [term, list] : postings_) out.insert(term);
  return out;
}

// ---------------------------------------------------------------------------
// Agents

QueryOutcome query_agent(const std::set<std::string>& doc_terms,
                         const std::set<std::string>& known_terms) {
  for (const auto& t : doc_terms) {
    if (!known_terms.contains(t)) return QueryOutcome::ToReading;
  }
  return QueryOutcome::ToRelevance;
}

std::vector<Candidate> reading_agent(const KnowledgeBase& kb, std::span<const Token> tokens) {
  std::vector<Candidate> out;
  for (const auto& tok : tokens) {
    if (kb.is_stop_word(tok.text)) continue;
    out.push_back({tok.text, TermStatus::Initial});
  }
  return out;
}

std::vector<Candidate> standardizing_agent(const KnowledgeBase& kb,
                                           std::span<const Candidate> candidates) {
  std::vector<Candidate> out;
  for (const auto& cand : candidates) {
    const std::string& surface = cand.term;
    if (kb.is_stop_word(surface) || utf8::length(surface) <= 1) continue;
    if (auto canonical = kb.normalize_term(surface)) {
      out.push_back({*canonical, TermStatus::Accepted});
      continue;
    }
    std::string stemmed = stem(surface);
    if (auto canonical = kb.normalize_term(stemmed)) {
      out.push_back({*canonical, TermStatus::Accepted});
    } else {
      out.push_back({std::move(stemmed), TermStatus::MorphError});
    }
  }
  return out;
}

std::vector<Candidate> proposition_agent(const KnowledgeBase& kb,
                                         std::span<const Candidate> terms) {
  // Only terms accepted on entry can rescue others, so the outcome does not
  // depend on the order of the list.
  std::set<std::string> reachable;
  for (const auto& t : terms) {
    if (t.status != TermStatus::Accepted || !kb.class_of_canonical(t.term)) continue;
    auto linked = kb.quasi_synonyms(t.term);
    reachable.insert(linked.begin(), linked.end());
  }
  std::vector<Candidate> out(terms.begin(), terms.end());
  for (auto& t : out) {
    if (t.status == TermStatus::MorphError && reachable.contains(t.term)) {
      t.status = TermStatus::Accepted;
    }
  }
  return out;
}

double cosine_similarity(const std::map<std::string, std::size_t>& doc,
                         const std::unordered_map<std::string, double>& other) {
  double dot = 0;
  double doc_norm = 0;
  for (const auto& [term, n] : doc) {
    const double x = static_cast<double>(n);
    doc_norm += x * x;
    if (auto it = other.find(term); it != other.end()) dot += x * it->second;
  }
  double other_norm = 0;
  for (const auto& [term, y] : other) other_norm += y * y;
  if (doc_norm == 0 || other_norm == 0) return 0;
  return dot / (std::sqrt(doc_norm) * std::sqrt(other_norm));
}

Relevance relevance_agent(const Blackboard& board, const IndexedDocument& doc,
                          int doc_year, int reference_year, double tau) {
  if (reference_year < doc_year) {
    throw Error(ErrorKind::PreconditionViolation, "agents",
                "document '" + doc.doc_id + "' is dated " + std::to_string(doc_year) +
                    ", after reference year " + std::to_string(reference_year));
  }
  if (reference_year - doc_year > kObsolescenceYears) return Relevance::Obsolete;
  if (board.empty()) return Relevance::Relevant;
  const double sim = cosine_similarity(doc.accepted_counts(), board.last_vector());
  return sim >= tau ? Relevance::Relevant : Relevance::Irrelevant;
}

// ---------------------------------------------------------------------------
// Pipeline

IndexedDocument analyze_document(const KnowledgeBase& kb, const Document& doc,
                                 ExtractionLevel level) {
  const auto tokens = tokenize(kb, doc.text);
  std::vector<Token> extracted;
  for (auto& term : extract_terms(kb, tokens, level)) {
    extracted.push_back(Token{std::move(term.text), extracted.size(), false});
  }
  const auto read = reading_agent(kb, extracted);
  const auto standardized = standardizing_agent(kb, read);
  const auto proposed = proposition_agent(kb, standardized);

  IndexedDocument out;
  out.doc_id = doc.id;
  out.year = doc.year;
  for (const auto& c : proposed) {
    auto& entry = out.terms[c.term];
    ++entry.count;
    if (entry.status != TermStatus::Accepted) entry.status = c.status;
  }
  return out;
}

PipelineResult run_pipeline(const KnowledgeBase& kb, const Corpus& corpus,
                            const PipelineConfig& config) {
  if (config.level == ExtractionLevel::Pragmatic) {
    throw Error(ErrorKind::UnimplementedLevel, "lexicon",
                "pragmatic extraction is not implemented");
  }

  PipelineResult result;
  result.documents.resize(corpus.size());

  // Front-end stages are independent per document.
  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(corpus.size(), 1)));
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < corpus.size(); i += workers) {
            result.documents[i] = analyze_document(kb, corpus[i], config.level);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::set<std::string> known;
  for (auto& doc : result.documents) {
    std::set<std::string> doc_terms;
    for (const auto& [term, entry] : doc.terms) doc_terms.insert(term);
    doc.new_term_count = static_cast<std::size_t>(std::count_if(
        doc_terms.begin(), doc_terms.end(), [&](const auto& t) { return !known.contains(t); }));

    const auto relevance =
        relevance_agent(result.board, doc, doc.year, config.reference_year, config.tau);
    if (query_agent(doc_terms, known) == QueryOutcome::ToReading) {
      doc.routing = relevance == Relevance::Obsolete ? Routing::Discard : Routing::Index;
    } else {
      doc.routing = relevance == Relevance::Relevant ? Routing::StoreOnly : Routing::Discard;
    }

    if (doc.routing == Routing::Discard) {
      for (auto& [term, entry] : doc.terms) entry.status = TermStatus::Rejected;
      continue;
    }
    result.board.append(BlackboardEntry{doc.doc_id, doc.routing, doc.year, doc.accepted_counts()});
    result.index.add(doc);
    known.insert(doc_terms.begin(), doc_terms.end());
    if (config.blackboard_path) result.board.write(*config.blackboard_path);
  }
  if (config.blackboard_path && result.board.empty()) result.board.write(*config.blackboard_path);
  return result;
}

}  // namespace coindex
