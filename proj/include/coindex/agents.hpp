#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coindex/corpus.hpp"
#include "coindex/kb.hpp"
#include "coindex/lexicon.hpp"

namespace coindex {

// Four-valued term logic: I (initial), T (accepted), F (rejected),
// J (morphological treatment failed).
enum class TermStatus { Initial, Accepted, Rejected, MorphError };

char status_letter(TermStatus s);
std::optional<TermStatus> parse_status_letter(char c);

enum class Routing { Index, StoreOnly, Discard };

std::string_view to_string(Routing r);
std::optional<Routing> parse_routing(std::string_view s);

struct TermEntry {
  std::size_t count = 0;
  TermStatus status = TermStatus::Initial;

  friend bool operator==(const TermEntry&, const TermEntry&) = default;
};

struct IndexedDocument {
  std::string doc_id;
  int year = 0;
  std::map<std::string, TermEntry> terms;
  Routing routing = Routing::Discard;
  std::size_t new_term_count = 0;

  std::map<std::string, std::size_t> accepted_counts() const;

  friend bool operator==(const IndexedDocument&, const IndexedDocument&) = default;
};

struct Candidate {
  std::string term;
  TermStatus status = TermStatus::Initial;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct BlackboardEntry {
  std::string doc_id;
  Routing routing = Routing::Index;
  int year = 0;
  std::map<std::string, std::size_t> terms;  // accepted canonicals

  friend bool operator==(const BlackboardEntry&, const BlackboardEntry&) = default;
};

// Append-only record of every non-discarded document, in processing order.
class Blackboard {
 public:
  void append(BlackboardEntry entry);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::span<const BlackboardEntry> entries() const { return entries_; }
  const BlackboardEntry* last_entry() const {
    return entries_.empty() ? nullptr : &entries_.back();
  }
  // Hashed view of the last entry's term vector.
  const std::unordered_map<std::string, double>& last_vector() const { return last_vector_; }

  std::string to_xml() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<BlackboardEntry> entries_;
  std::unordered_map<std::string, double> last_vector_;
};

struct Posting {
  std::string doc_id;
  int year = 0;
  std::size_t count = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

// Hash index from canonical term to postings, newest document first.
class TermIndex {
 public:
  void add(const IndexedDocument& doc);

  bool contains(std::string_view term) const;
  std::span<const Posting> postings(std::string_view term) const;
  std::set<std::string> terms() const;
  std::size_t size() const { return postings_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, std::vector<Posting>, Hash, std::equal_to<>> postings_;
};

enum class QueryOutcome { ToReading, ToRelevance };
enum class Relevance { Relevant, Obsolete, Irrelevant };

// Documents older than this many years (strictly) are obsolete.
inline constexpr int kObsolescenceYears = 5;
inline constexpr double kDefaultTau = 0.2;

QueryOutcome query_agent(const std::set<std::string>& doc_terms,
                         const std::set<std::string>& known_terms);

std::vector<Candidate> reading_agent(const KnowledgeBase& kb, std::span<const Token> tokens);

std::vector<Candidate> standardizing_agent(const KnowledgeBase& kb,
                                           std::span<const Candidate> candidates);

std::vector<Candidate> proposition_agent(const KnowledgeBase& kb,
                                         std::span<const Candidate> terms);

double cosine_similarity(const std::map<std::string, std::size_t>& doc,
                         const std::unordered_map<std::string, double>& other);

Relevance relevance_agent(const Blackboard& board, const IndexedDocument& doc,
                          int doc_year, int reference_year, double tau);

struct PipelineConfig {
  double tau = kDefaultTau;
  int reference_year = 0;
  ExtractionLevel level = ExtractionLevel::Lexical;
  // When set, the blackboard file is rewritten after every append.
  std::optional<std::filesystem::path> blackboard_path;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct PipelineResult {
  std::vector<IndexedDocument> documents;
  Blackboard board;
  TermIndex index;
};

// Per-document front end: extraction, reading, standardizing and proposition
// agents, folded into a term map with no routing decided yet.
IndexedDocument analyze_document(const KnowledgeBase& kb, const Document& doc,
                                 ExtractionLevel level);

PipelineResult run_pipeline(const KnowledgeBase& kb, const Corpus& corpus,
                            const PipelineConfig& config);

}  // namespace coindex
