#include "coindex/graphviz.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "coindex/error.hpp"
#include "coindex/format.hpp"

namespace coindex {

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::MalformedInput, "graphviz", msg);
}

}  // namespace

std::optional<std::size_t> TermGraph::find(std::string_view label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return i;
  }
  return std::nullopt;
}

void TermGraph::validate() const {
  std::set<std::string_view> seen;
  for (const auto& n : nodes) {
    if (!seen.insert(n.label).second) {
      throw Error(ErrorKind::PreconditionViolation, "graphviz", "duplicate node label '" + n.label + "'");
    }
    if (n.label.find('"') != std::string::npos || n.label.find('\n') != std::string::npos) {
      throw Error(ErrorKind::PreconditionViolation, "graphviz",
                  "node label '" + n.label + "' cannot be written as a Pajek label");
    }
  }
  for (const auto& e : edges) {
    if (e.a >= nodes.size() || e.b >= nodes.size() || e.a == e.b || !(e.weight > 0)) {
      throw Error(ErrorKind::PreconditionViolation, "graphviz", "invalid edge");
    }
  }
}

TermGraph ego_network(const TermDocMatrix& m, std::string_view term) {
  auto pos = std::find(m.terms.begin(), m.terms.end(), term);
  if (pos == m.terms.end()) {
    throw Error(ErrorKind::UnknownTerm, "graphviz", "'" + std::string(term) + "' is not a matrix row");
  }
  const auto center = static_cast<std::size_t>(pos - m.terms.begin());

  // Per-row document supports in one pass over the columns.
  std::vector<std::set<std::size_t>> support(m.rows());
  for (Eigen::Index j = 0; j < m.counts.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m.counts, j); it; ++it) {
      if (it.value() > 0) support[static_cast<std::size_t>(it.row())].insert(static_cast<std::size_t>(j));
    }
  }

  TermGraph g;
  GraphNode c{m.terms[center], {}, false};
  for (auto j : support[center]) c.payload.insert(m.docs[j]);
  g.nodes.push_back(std::move(c));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i == center) continue;
    GraphNode n{m.terms[i], {}, false};
    for (auto j : support[i]) {
      if (support[center].contains(j)) n.payload.insert(m.docs[j]);
    }
    if (n.payload.empty()) continue;
    const double w = static_cast<double>(n.payload.size());
    g.nodes.push_back(std::move(n));
    g.edges.push_back({0, g.nodes.size() - 1, w});
  }
  return g;
}

TermGraph cluster_graph(const TermDocMatrix& m, const CoClustering& c) {
  TermGraph g;
  for (std::size_t id = 0; id < c.k; ++id) {
    g.nodes.push_back({"cluster" + std::to_string(id + 1), {}, false});
  }
  for (std::size_t j = 0; j < m.cols(); ++j) g.nodes[c.doc_labels[j]].payload.insert(m.docs[j]);

  std::map<std::pair<std::size_t, std::size_t>, double> mass;
  for (Eigen::Index j = 0; j < m.counts.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m.counts, j); it; ++it) {
      const std::size_t a = c.word_labels[static_cast<std::size_t>(it.row())];
      const std::size_t b = c.doc_labels[static_cast<std::size_t>(j)];
      if (a != b) mass[{std::min(a, b), std::max(a, b)}] += it.value();
    }
  }
  for (const auto& [key, w] : mass) {
    if (w > 0) g.edges.push_back({key.first, key.second, w});
  }
  return g;
}

TermGraph combine_nodes(const TermGraph& g, std::string_view a, std::string_view b,
                        CombineMode mode) {
  const auto ia = g.find(a);
  const auto ib = g.find(b);
  if (!ia || !ib) {
    throw Error(ErrorKind::UnknownNode, "graphviz",
                "no node labelled '" + std::string(!ia ? a : b) + "'");
  }
  if (*ia == *ib) {
    throw Error(ErrorKind::PreconditionViolation, "graphviz", "cannot combine a node with itself");
  }

  GraphNode merged;
  const auto& na = g.nodes[*ia];
  const auto& nb = g.nodes[*ib];
  if (mode == CombineMode::Union) {
    merged.label = na.label + "+" + nb.label;
    merged.payload = na.payload;
    merged.payload.insert(nb.payload.begin(), nb.payload.end());
  } else {
    merged.label = na.label + "·" + nb.label;
    std::set_intersection(na.payload.begin(), na.payload.end(), nb.payload.begin(),
                          nb.payload.end(), std::inserter(merged.payload, merged.payload.end()));
    merged.flagged = merged.payload.empty();
  }
  if (g.find(merged.label)) {
    throw Error(ErrorKind::PreconditionViolation, "graphviz",
                "node '" + merged.label + "' already exists");
  }

  // The merged node takes a's position; b's slot is removed.
  TermGraph out;
  std::vector<std::size_t> remap(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (i == *ib) continue;
    remap[i] = out.nodes.size();
    out.nodes.push_back(i == *ia ? merged : g.nodes[i]);
  }
  remap[*ib] = remap[*ia];

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
  for (const auto& e : g.edges) {
    const std::size_t x = remap[e.a];
    const std::size_t y = remap[e.b];
    if (x == y) continue;
    const auto key = std::make_pair(std::min(x, y), std::max(x, y));
    if (auto it = slot.find(key); it != slot.end()) {
      out.edges[it->second].weight += e.weight;
    } else {
      slot.emplace(key, out.edges.size());
      out.edges.push_back({x, y, e.weight});
    }
  }
  return out;
}

std::string pajek_text(const TermGraph& g) {
  g.validate();
  std::string out = "*Vertices " + std::to_string(g.nodes.size()) + "\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out += std::to_string(i + 1) + " \"" + g.nodes[i].label + "\"\n";
  }
  out += "*Edges\n";
  for (const auto& e : g.edges) {
    out += std::to_string(e.a + 1) + " " + std::to_string(e.b + 1) + " " + format_number(e.weight) + "\n";
  }
  return out;
}

void export_pajek(const TermGraph& g, const std::filesystem::path& path) {
  const std::string text = pajek_text(g);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "graphviz", "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "graphviz", "short write to " + path.string());
}

TermGraph parse_pajek(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = eol + 1;
  }

  auto parse_size = [](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) malformed("bad integer '" + std::string(s) + "'");
    return v;
  };

  if (lines.empty() || !lines[0].starts_with("*Vertices ")) malformed("missing *Vertices header");
  const std::size_t n = parse_size(lines[0].substr(10));
  if (lines.size() < n + 2) malformed("truncated vertex list");

  TermGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string_view line = lines[i + 1];
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) malformed("bad vertex line");
    if (parse_size(line.substr(0, sp)) != i + 1) malformed("vertices must be numbered in order");
    const std::string_view rest = line.substr(sp + 1);
    if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') malformed("vertex label must be quoted");
    g.nodes.push_back({std::string(rest.substr(1, rest.size() - 2)), {}, false});
  }
  if (lines[n + 1] != "*Edges") malformed("missing *Edges header");
  for (std::size_t l = n + 2; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    std::istringstream fields{std::string(lines[l])};
    std::string a;
    std::string b;
    std::string w;
    if (!(fields >> a >> b >> w)) malformed("bad edge line");
    double weight = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc{} || ptr != w.data() + w.size()) malformed("bad edge weight '" + w + "'");
    const std::size_t x = parse_size(a);
    const std::size_t y = parse_size(b);
    if (x == 0 || y == 0) malformed("vertex numbers are 1-based");
    g.edges.push_back({x - 1, y - 1, weight});
  }
  g.validate();
  return g;
}

}  // namespace coindex
