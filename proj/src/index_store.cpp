#include "coindex/index_store.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coindex/error.hpp"

namespace coindex {

namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::MalformedInput, "cli", msg);
}

}  // namespace

std::string index_store_json(std::span<const IndexedDocument> docs, const TermIndex& index,
                             int reference_year) {
  json documents = json::array();
  for (const auto& d : docs) {
    json terms = json::object();
    for (const auto& [term, entry] : d.terms) {
      terms[term] = {{"n", entry.count}, {"status", std::string(1, status_letter(entry.status))}};
    }
    documents.push_back({{"id", d.doc_id},
                         {"year", d.year},
                         {"routing", to_string(d.routing)},
                         {"new_terms", d.new_term_count},
                         {"terms", terms}});
  }
  json postings = json::object();
  for (const auto& term : index.terms()) {
    json list = json::array();
    for (const auto& p : index.postings(term)) {
      list.push_back({{"doc", p.doc_id}, {"year", p.year}, {"n", p.count}});
    }
    postings[term] = list;
  }
  json doc = {{"reference_year", reference_year}, {"documents", documents}, {"postings", postings}};
  return doc.dump(2) + "\n";
}

std::vector<IndexedDocument> parse_index_store(std::string_view text) {
  std::vector<IndexedDocument> out;
  try {
    const json doc = json::parse(text);
    for (const auto& d : doc.at("documents")) {
      IndexedDocument id;
      id.doc_id = d.at("id").get<std::string>();
      id.year = d.at("year").get<int>();
      auto routing = parse_routing(d.at("routing").get<std::string>());
      if (!routing) malformed("unknown routing for document '" + id.doc_id + "'");
      id.routing = *routing;
      id.new_term_count = d.at("new_terms").get<std::size_t>();
      for (const auto& [term, entry] : d.at("terms").items()) {
        const auto letter = entry.at("status").get<std::string>();
        auto status = letter.size() == 1 ? parse_status_letter(letter[0]) : std::nullopt;
        if (!status) malformed("bad status for term '" + term + "'");
        id.terms.emplace(term, TermEntry{entry.at("n").get<std::size_t>(), *status});
      }
      out.push_back(std::move(id));
    }
  } catch (const json::exception& e) {
    malformed(std::string("index store: ") + e.what());
  }
  return out;
}

DocTermSets produced_terms(std::span<const IndexedDocument> docs) {
  DocTermSets out;
  for (const auto& d : docs) {
    if (d.routing == Routing::Discard) continue;
    auto& set = out[d.doc_id];
    for (const auto& [term, entry] : d.terms) {
      if (entry.status != TermStatus::Rejected) set.insert(term);
    }
  }
  return out;
}

std::string cluster_report_json(const TermDocMatrix& m, const CoClustering& c) {
  json clusters = json::array();
  const auto words = c.word_clusters();
  const auto docs = c.doc_clusters();
  for (std::size_t id = 0; id < c.k; ++id) {
    json w = json::array();
    for (auto i : words[id]) w.push_back(m.terms[i]);
    json d = json::array();
    for (auto j : docs[id]) d.push_back(m.docs[j]);
    clusters.push_back({{"id", id + 1}, {"words", w}, {"docs", d}});
  }
  json doc = {{"k", c.k}, {"clusters", clusters}, {"dropped_groups", c.dropped_groups}};
  if (c.k == 2) doc["ratio_cut_2way"] = two_way_ratio_cut(m, c);
  return doc.dump(2) + "\n";
}

CoClustering parse_cluster_report(std::string_view text, const TermDocMatrix& m) {
  CoClustering c;
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  c.word_labels.assign(m.rows(), kUnset);
  c.doc_labels.assign(m.cols(), kUnset);
  std::map<std::string, std::size_t, std::less<>> term_row;
  std::map<std::string, std::size_t, std::less<>> doc_col;
  for (std::size_t i = 0; i < m.rows(); ++i) term_row.emplace(m.terms[i], i);
  for (std::size_t j = 0; j < m.cols(); ++j) doc_col.emplace(m.docs[j], j);
  try {
    const json doc = json::parse(text);
    c.k = doc.at("k").get<std::size_t>();
    c.dropped_groups = doc.at("dropped_groups").get<std::size_t>();
    const auto& clusters = doc.at("clusters");
    if (clusters.size() != c.k) malformed("cluster report lists a different number of clusters than k");
    for (std::size_t id = 0; id < c.k; ++id) {
      for (const auto& w : clusters[id].at("words")) {
        auto it = term_row.find(w.get<std::string>());
        if (it == term_row.end() || c.word_labels[it->second] != kUnset) {
          malformed("cluster report word '" + w.get<std::string>() + "' does not match the matrix");
        }
        c.word_labels[it->second] = id;
      }
      for (const auto& d : clusters[id].at("docs")) {
        auto it = doc_col.find(d.get<std::string>());
        if (it == doc_col.end() || c.doc_labels[it->second] != kUnset) {
          malformed("cluster report document '" + d.get<std::string>() + "' does not match the matrix");
        }
        c.doc_labels[it->second] = id;
      }
    }
  } catch (const json::exception& e) {
    malformed(std::string("cluster report: ") + e.what());
  }
  if (std::find(c.word_labels.begin(), c.word_labels.end(), kUnset) != c.word_labels.end() ||
      std::find(c.doc_labels.begin(), c.doc_labels.end(), kUnset) != c.doc_labels.end()) {
    malformed("cluster report does not cover the matrix");
  }
  return c;
}

std::string read_file(const std::filesystem::path& path, std::string_view module) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, std::string(module), "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content,
                std::string_view module) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, std::string(module), "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::IoError, std::string(module), "short write to " + path.string());
}

}  // namespace coindex
