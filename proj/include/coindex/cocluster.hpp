#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "coindex/agents.hpp"
#include "coindex/lexicon.hpp"

namespace coindex {

using SparseMatrix = Eigen::SparseMatrix<double>;  // column-major

/// Term-by-document count matrix. Rows are vocabulary terms, columns are
/// documents; all-zero rows and columns are removed at construction and
/// listed in `pruned_terms` / `pruned_docs`.
struct TermDocMatrix {
  SparseMatrix counts;
  std::vector<std::string> terms;
  std::vector<std::string> docs;
  Eigen::VectorXd row_degrees;
  Eigen::VectorXd col_degrees;
  std::vector<std::string> pruned_terms;
  std::vector<std::string> pruned_docs;

  std::size_t rows() const { return terms.size(); }
  std::size_t cols() const { return docs.size(); }

  // Throws EmptyMatrix if nothing survives pruning, PreconditionViolation on
  // negative entries or label/shape mismatch.
  static TermDocMatrix from_dense(const Eigen::MatrixXd& dense,
                                  std::vector<std::string> terms,
                                  std::vector<std::string> docs);
};

TermDocMatrix build_matrix(const Vocabulary& vocab, std::span<const IndexedDocument> docs);

// An = D1^(-1/2) A D2^(-1/2).
SparseMatrix normalize_matrix(const TermDocMatrix& m);

struct SingularTriple {
  double value = 0;
  Eigen::VectorXd u;  // left, length rows
  Eigen::VectorXd v;  // right, length cols
};

struct SvdOptions {
  double value_tolerance = 1e-10;     // successive singular value change
  double residual_tolerance = 1e-10;  // max-norm of An^T u - sigma v
  int max_iterations = 10000;
  std::size_t oversampling = 8;       // extra block columns
};

struct SvdReport {
  std::vector<SingularTriple> triples;
  int iterations = 0;
  double residual = 0;
};

/// Leading `count` singular triples of `a` restricted to the orthogonal
/// complement of the unit right vector `deflate` (pass an empty vector for
/// no deflation). Householder deflation followed by block subspace iteration
/// on a^T a with Rayleigh-Ritz extraction. Signs are fixed so the
/// largest-magnitude entry of each v is positive.
SvdReport deflated_singular_triples(const SparseMatrix& a, const Eigen::VectorXd& deflate,
                                    std::size_t count, const SvdOptions& options = {});

// ceil(log2 k) for k >= 2, 1 for k == 1.
std::size_t embedding_dimension(std::size_t k);

struct Embedding {
  Eigen::MatrixXd coords;  // (rows + cols) x dimension; terms first
  std::vector<SingularTriple> triples;
  int iterations = 0;
  double residual = 0;
};

// Skips the trivial pair (sigma = 1, v ~ sqrt(D2)) and stacks
// D1^(-1/2) u and D2^(-1/2) v for the next ceil(log2 k) pairs.
Embedding spectral_embed(const TermDocMatrix& m, std::size_t k, const SvdOptions& options = {});

inline constexpr int kKmeansMaxIterations = 300;

// Seeded k-means++ initialisation followed by Lloyd iterations. Each point
// is a row of `points`; returns labels in [0, k). With restarts > 1 the run
// with the lowest inertia wins (earliest on ties).
std::vector<std::size_t> kmeans_partition(const Eigen::MatrixXd& points, std::size_t k,
                                          std::uint64_t seed, std::size_t restarts = 1);

// W_m = { w_i : sum_{j in D_m} A_ij >= sum_{j in D_l} A_ij for all l }.
// Ties go to the smallest cluster index.
std::vector<std::size_t> assign_word_clusters(const SparseMatrix& a,
                                              std::span<const std::size_t> doc_labels,
                                              std::size_t k);

// D_m = { d_j : sum_{i in W_m} A_ij >= sum_{i in W_l} A_ij for all l }.
std::vector<std::size_t> assign_doc_clusters(const SparseMatrix& a,
                                             std::span<const std::size_t> word_labels,
                                             std::size_t k);

struct BipartiteEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0;
};

// Vertices 0..n_terms-1 are terms, the rest documents.
struct BipartiteGraph {
  std::vector<std::string> labels;
  std::size_t n_terms = 0;
  std::vector<BipartiteEdge> edges;

  std::size_t vertex_count() const { return labels.size(); }
  static BipartiteGraph from_matrix(const TermDocMatrix& m);
};

double ratio_cut(const BipartiteGraph& g, std::span<const std::size_t> side1,
                 std::span<const std::size_t> side2);

inline constexpr std::size_t kBruteForceMaxVertices = 20;

struct CutResult {
  std::vector<std::size_t> side1;  // vertex ids, ordered by label
  double value = 0;
};

// Exhaustive minimum over all 2-partitions with both sides nonempty. Among
// ties the side-1 set whose sorted labels are lexicographically smallest
// wins.
CutResult brute_force_min_ratio_cut(const BipartiteGraph& g);

struct CoclusterOptions {
  std::size_t refine_passes = 1;
  std::size_t kmeans_restarts = 10;
  SvdOptions svd;
};

struct CoClustering {
  std::size_t k = 0;
  std::vector<std::size_t> word_labels;  // per matrix row
  std::vector<std::size_t> doc_labels;   // per matrix column
  Eigen::MatrixXd embedding;
  std::vector<double> singular_values;
  std::size_t dropped_groups = 0;

  std::vector<std::vector<std::size_t>> word_clusters() const;
  std::vector<std::vector<std::size_t>> doc_clusters() const;
};

/// normalize -> embed -> k-means over term and document vertices -> document
/// groups (groups without documents are dropped) -> refine_passes rounds of
/// (W from D, D from W). Cluster ids are renumbered in order of their first
/// document, then first word for word-only clusters.
CoClustering cocluster(const TermDocMatrix& m, std::size_t k, std::uint64_t seed,
                       const CoclusterOptions& options = {});

// Ratio cut of the bipartition {W_1 u D_1, rest}; requires k == 2.
double two_way_ratio_cut(const TermDocMatrix& m, const CoClustering& c);

}  // namespace coindex
