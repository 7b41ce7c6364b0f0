#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coindex/agents.hpp"
#include "coindex/cocluster.hpp"
#include "coindex/eval.hpp"

namespace coindex {

// Index store: one JSON document holding every processed document (routing,
// year, term counts with status letters) and the term postings.
std::string index_store_json(std::span<const IndexedDocument> docs, const TermIndex& index,
                             int reference_year);
std::vector<IndexedDocument> parse_index_store(std::string_view text);

// Terms produced for each indexed or stored document (rejected terms
// excluded).
DocTermSets produced_terms(std::span<const IndexedDocument> docs);

std::string cluster_report_json(const TermDocMatrix& m, const CoClustering& c);

// Rebuilds cluster labels for `m` from a report. Every matrix row and column
// must appear exactly once.
CoClustering parse_cluster_report(std::string_view text, const TermDocMatrix& m);

std::string read_file(const std::filesystem::path& path, std::string_view module);
void write_file(const std::filesystem::path& path, std::string_view content,
                std::string_view module);

}  // namespace coindex
