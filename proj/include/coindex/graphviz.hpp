#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coindex/cocluster.hpp"

namespace coindex {

struct GraphNode {
  std::string label;
  std::set<std::string> payload;  // document ids
  // Set when an intersection left the payload empty.
  bool flagged = false;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Node labels are unique, edges join distinct valid nodes with positive
// weight.
struct TermGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  std::optional<std::size_t> find(std::string_view label) const;
  void validate() const;

  friend bool operator==(const TermGraph&, const TermGraph&) = default;
};

// Center term plus every term sharing a document with it. Edge weight is the
// number of shared documents; a neighbour's payload is that shared set.
TermGraph ego_network(const TermDocMatrix& m, std::string_view term);

// One node per cluster, labelled "cluster<id>" (1-based) with the cluster's
// documents as payload; edge weight is the matrix mass between the words of
// one cluster and the documents of the other, both directions summed.
TermGraph cluster_graph(const TermDocMatrix& m, const CoClustering& c);

enum class CombineMode { Union, Intersection };

// Replaces nodes a and b with "a+b" (union of payloads) or "a·b"
// (intersection). Edges to third nodes are re-attached with weights summed
// on collision; an a-b edge disappears.
TermGraph combine_nodes(const TermGraph& g, std::string_view a, std::string_view b,
                        CombineMode mode);

std::string pajek_text(const TermGraph& g);
void export_pajek(const TermGraph& g, const std::filesystem::path& path);

// Reads the subset of the Pajek .net format that pajek_text writes
// (vertices with quoted labels, an *Edges section with weights).
TermGraph parse_pajek(std::string_view text);

}  // namespace coindex
