#include "coindex/cocluster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "coindex/error.hpp"

namespace coindex {

namespace {

constexpr std::uint64_t kSvdStartSeed = 0x9E3779B97F4A7C15ULL;
// Singular values below this are reported as exactly zero with u = 0.
constexpr double kZeroSingularValue = 1e-6;
constexpr double kTieTolerance = 1e-12;

[[noreturn]] void precondition(const std::string& msg) {
  throw Error(ErrorKind::PreconditionViolation, "cocluster", msg);
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Orthonormal basis of the complement of a unit vector f, applied implicitly
// through the Householder reflector that maps f onto a coordinate axis.
class Deflation {
 public:
  Deflation(const Eigen::VectorXd& f, Eigen::Index n) : n_(n), active_(f.size() > 0) {
    if (!active_) return;
    w_ = f;
    w_(0) += f(0) >= 0 ? 1.0 : -1.0;
    wnorm2_ = w_.squaredNorm();
  }

  Eigen::Index reduced_size() const { return active_ ? n_ - 1 : n_; }

  // R^{m x p} -> R^{n x p}
  Eigen::MatrixXd expand(const Eigen::MatrixXd& y) const {
    if (!active_) return y;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_, y.cols());
    x.bottomRows(n_ - 1) = y;
    reflect(x);
    return x;
  }

  // R^{n x p} -> R^{m x p}
  Eigen::MatrixXd restrict(Eigen::MatrixXd x) const {
    if (!active_) return x;
    reflect(x);
    return x.bottomRows(n_ - 1);
  }

 private:
  void reflect(Eigen::MatrixXd& x) const {
    const Eigen::RowVectorXd proj = (w_.transpose() * x) * (2.0 / wnorm2_);
    x.noalias() -= w_ * proj;
  }

  Eigen::Index n_;
  bool active_;
  Eigen::VectorXd w_;
  double wnorm2_ = 1;
};

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

std::size_t argmax_with_ties(std::span<const double> sums) {
  std::size_t best = 0;
  for (std::size_t m = 1; m < sums.size(); ++m) {
    const double scale = std::max(std::fabs(sums[m]), std::fabs(sums[best]));
    if (sums[m] > sums[best] && sums[m] - sums[best] > kTieTolerance * scale) best = m;
  }
  return best;
}

void check_labels(std::span<const std::size_t> labels, std::size_t expected, std::size_t k,
                  const char* what) {
  if (k == 0) precondition("cluster count must be at least 1");
  if (labels.size() != expected) {
    precondition(std::string(what) + " labels do not cover the matrix");
  }
  for (auto l : labels) {
    if (l >= k) precondition(std::string(what) + " label out of range");
  }
}

double squared_distance(const Eigen::MatrixXd& points, Eigen::Index row,
                        const Eigen::MatrixXd& centers, Eigen::Index c) {
  return (points.row(row) - centers.row(c)).squaredNorm();
}

struct KmeansRun {
  std::vector<std::size_t> labels;
  double inertia = 0;
};

KmeansRun kmeans_once(const Eigen::MatrixXd& points, std::size_t k, std::mt19937_64& gen) {
  const auto n = static_cast<std::size_t>(points.rows());
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), points.cols());

  // k-means++ seeding.
  std::vector<bool> chosen(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::size_t first = std::min(n - 1, static_cast<std::size_t>(uniform01(gen) * n));
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pick = first;
    if (c > 0) {
      double total = 0;
      for (std::size_t i = 0; i < n; ++i) total += d2[i];
      if (total > 0) {
        const double r = uniform01(gen) * total;
        double acc = 0;
        pick = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (d2[i] <= 0) continue;
          acc += d2[i];
          pick = i;
          if (acc > r) break;
        }
      } else {
        // Every point coincides with a center; take a random unused one.
        std::vector<std::size_t> unused;
        for (std::size_t i = 0; i < n; ++i) {
          if (!chosen[i]) unused.push_back(i);
        }
        pick = unused[std::min(unused.size() - 1,
                               static_cast<std::size_t>(uniform01(gen) * unused.size()))];
      }
    }
    chosen[pick] = true;
    centers.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points, static_cast<Eigen::Index>(i), centers,
                                               static_cast<Eigen::Index>(c)));
    }
  }

  std::vector<std::size_t> labels(n, k);
  for (int iter = 0; iter < kKmeansMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(points, static_cast<Eigen::Index>(i), centers, 0);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points, static_cast<Eigen::Index>(i), centers,
                                          static_cast<Eigen::Index>(c));
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }

    // Repair empty clusters by stealing the point farthest from its centroid.
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) ++sizes[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t victim = n;
      double victim_d = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[labels[i]] < 2) continue;
        const double d = squared_distance(points, static_cast<Eigen::Index>(i), centers,
                                          static_cast<Eigen::Index>(labels[i]));
        if (d > victim_d) {
          victim_d = d;
          victim = i;
        }
      }
      --sizes[labels[victim]];
      labels[victim] = c;
      sizes[c] = 1;
      changed = true;
    }

    centers.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      centers.row(static_cast<Eigen::Index>(labels[i])) += points.row(static_cast<Eigen::Index>(i));
    }
    for (std::size_t c = 0; c < k; ++c) {
      centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(sizes[c]);
    }
    if (!changed) break;
  }

  KmeansRun run{labels, 0};
  for (std::size_t i = 0; i < n; ++i) {
    run.inertia += squared_distance(points, static_cast<Eigen::Index>(i), centers,
                                    static_cast<Eigen::Index>(labels[i]));
  }
  return run;
}

// Renumbers clusters by first document, then first word; drops clusters
// that are empty on both sides.
std::size_t canonicalize(CoClustering& c, std::size_t k) {
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> remap(k, kUnset);
  std::size_t next = 0;
  for (auto l : c.doc_labels) {
    if (remap[l] == kUnset) remap[l] = next++;
  }
  for (auto l : c.word_labels) {
    if (remap[l] == kUnset) remap[l] = next++;
  }
  for (auto& l : c.doc_labels) l = remap[l];
  for (auto& l : c.word_labels) l = remap[l];
  c.k = next;
  return k - next;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix construction

TermDocMatrix TermDocMatrix::from_dense(const Eigen::MatrixXd& dense,
                                        std::vector<std::string> terms,
                                        std::vector<std::string> docs) {
  if (static_cast<std::size_t>(dense.rows()) != terms.size() ||
      static_cast<std::size_t>(dense.cols()) != docs.size()) {
    precondition("matrix shape does not match its labels");
  }
  if ((dense.array() < 0).any()) precondition("term-document counts must be nonnegative");

  const Eigen::VectorXd rsum = dense.rowwise().sum();
  const Eigen::VectorXd csum = dense.colwise().sum();
  std::vector<Eigen::Index> keep_rows;
  std::vector<Eigen::Index> keep_cols;
  TermDocMatrix m;
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    if (rsum(i) > 0) {
      keep_rows.push_back(i);
      m.terms.push_back(std::move(terms[static_cast<std::size_t>(i)]));
    } else {
      m.pruned_terms.push_back(std::move(terms[static_cast<std::size_t>(i)]));
    }
  }
  for (Eigen::Index j = 0; j < dense.cols(); ++j) {
    if (csum(j) > 0) {
      keep_cols.push_back(j);
      m.docs.push_back(std::move(docs[static_cast<std::size_t>(j)]));
    } else {
      m.pruned_docs.push_back(std::move(docs[static_cast<std::size_t>(j)]));
    }
  }
  if (keep_rows.empty() || keep_cols.empty()) {
    throw Error(ErrorKind::EmptyMatrix, "cocluster", "every term or document was pruned");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t jj = 0; jj < keep_cols.size(); ++jj) {
    for (std::size_t ii = 0; ii < keep_rows.size(); ++ii) {
      const double x = dense(keep_rows[ii], keep_cols[jj]);
      if (x != 0) {
        triplets.emplace_back(static_cast<int>(ii), static_cast<int>(jj), x);
      }
    }
  }
  m.counts.resize(static_cast<Eigen::Index>(keep_rows.size()),
                  static_cast<Eigen::Index>(keep_cols.size()));
  m.counts.setFromTriplets(triplets.begin(), triplets.end());
  m.row_degrees = m.counts * Eigen::VectorXd::Ones(m.counts.cols());
  m.col_degrees = m.counts.transpose() * Eigen::VectorXd::Ones(m.counts.rows());
  return m;
}

TermDocMatrix build_matrix(const Vocabulary& vocab, std::span<const IndexedDocument> docs) {
  if (vocab.terms.empty()) {
    throw Error(ErrorKind::EmptyMatrix, "cocluster", "vocabulary is empty");
  }
  std::vector<const IndexedDocument*> indexed;
  for (const auto& d : docs) {
    if (d.routing == Routing::Index) indexed.push_back(&d);
  }
  if (indexed.empty()) {
    throw Error(ErrorKind::EmptyMatrix, "cocluster", "no document is routed to Index");
  }

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab.terms.size()),
                                                static_cast<Eigen::Index>(indexed.size()));
  std::vector<std::string> doc_ids;
  for (std::size_t j = 0; j < indexed.size(); ++j) {
    doc_ids.push_back(indexed[j]->doc_id);
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
      auto it = indexed[j]->terms.find(vocab.terms[i]);
      if (it != indexed[j]->terms.end() && it->second.status != TermStatus::Rejected) {
        dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            static_cast<double>(it->second.count);
      }
    }
  }
  return TermDocMatrix::from_dense(dense, vocab.terms, std::move(doc_ids));
}

SparseMatrix normalize_matrix(const TermDocMatrix& m) {
  if ((m.row_degrees.array() <= 0).any() || (m.col_degrees.array() <= 0).any()) {
    throw Error(ErrorKind::ZeroDegree, "cocluster", "matrix has a zero-degree vertex");
  }
  SparseMatrix an = m.counts;
  for (Eigen::Index j = 0; j < an.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(an, j); it; ++it) {
      it.valueRef() = it.value() / std::sqrt(m.row_degrees(it.row()) * m.col_degrees(j));
    }
  }
  return an;
}

// ---------------------------------------------------------------------------
// Singular vectors

SvdReport deflated_singular_triples(const SparseMatrix& a, const Eigen::VectorXd& deflate,
                                    std::size_t count, const SvdOptions& options) {
  const Eigen::Index n = a.cols();
  if (deflate.size() != 0 && deflate.size() != n) {
    precondition("deflation vector length does not match the matrix");
  }
  const Deflation defl(deflate, n);
  const Eigen::Index m = defl.reduced_size();
  if (count == 0) return {};
  if (static_cast<Eigen::Index>(count) > m) {
    precondition("requested " + std::to_string(count) + " singular pairs from a space of dimension " +
                 std::to_string(m));
  }
  const Eigen::Index p = std::min<Eigen::Index>(m, static_cast<Eigen::Index>(count + options.oversampling));

  auto apply = [&](const Eigen::MatrixXd& y) {
    const Eigen::MatrixXd x = defl.expand(y);
    const Eigen::MatrixXd t = a * x;
    return defl.restrict(a.transpose() * t);
  };

  std::mt19937_64 gen(kSvdStartSeed);
  Eigen::MatrixXd start(m, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) start(i, j) = 2.0 * uniform01(gen) - 1.0;
  }
  Eigen::MatrixXd q = orthonormal_columns(start);

  std::vector<double> previous(count, std::numeric_limits<double>::infinity());
  Eigen::MatrixXd ritz;
  Eigen::VectorXd lambda;
  int iter = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  while (iter < options.max_iterations) {
    ++iter;
    const Eigen::MatrixXd mq = apply(q);
    Eigen::MatrixXd h = q.transpose() * mq;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    const Eigen::MatrixXd s = eig.eigenvectors().rowwise().reverse();
    lambda = eig.eigenvalues().reverse();
    ritz = q * s;
    const Eigen::MatrixXd m_ritz = mq * s;

    double value_change = 0;
    residual = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto c = static_cast<Eigen::Index>(i);
      const double sigma = std::sqrt(std::max(lambda(c), 0.0));
      const double r = (m_ritz.col(c) - lambda(c) * ritz.col(c)).cwiseAbs().maxCoeff();
      residual = std::max(residual, sigma > kZeroSingularValue ? r / sigma : r);
      value_change = std::max(value_change, std::fabs(sigma - previous[i]));
      previous[i] = sigma;
    }
    if (value_change < options.value_tolerance && residual < options.residual_tolerance) {
      converged = true;
      break;
    }
    q = orthonormal_columns(m_ritz);
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence, "cocluster",
                "singular vectors did not converge in " + std::to_string(iter) +
                    " iterations (residual " + std::to_string(residual) + ")");
  }

  SvdReport report;
  report.iterations = iter;
  const Eigen::MatrixXd v_all = defl.expand(ritz.leftCols(static_cast<Eigen::Index>(count)));
  for (std::size_t i = 0; i < count; ++i) {
    SingularTriple t;
    t.v = v_all.col(static_cast<Eigen::Index>(i)).normalized();
    Eigen::Index pivot = 0;
    t.v.cwiseAbs().maxCoeff(&pivot);
    if (t.v(pivot) < 0) t.v = -t.v;
    const Eigen::VectorXd av = a * t.v;
    t.value = av.norm();
    if (t.value > kZeroSingularValue) {
      t.u = av / t.value;
    } else {
      t.value = 0;
      t.u = Eigen::VectorXd::Zero(a.rows());
    }
    const double r1 = (av - t.value * t.u).cwiseAbs().maxCoeff();
    const double r2 = (Eigen::VectorXd(a.transpose() * t.u) - t.value * t.v).cwiseAbs().maxCoeff();
    report.residual = std::max({report.residual, r1, r2});
    report.triples.push_back(std::move(t));
  }
  return report;
}

std::size_t embedding_dimension(std::size_t k) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < k) ++l;
  return std::max<std::size_t>(l, 1);
}

Embedding spectral_embed(const TermDocMatrix& m, std::size_t k, const SvdOptions& options) {
  if (k < 2) precondition("spectral embedding needs k >= 2");
  if (k > std::min(m.rows(), m.cols())) {
    precondition("k = " + std::to_string(k) + " exceeds min(terms, documents) = " +
                 std::to_string(std::min(m.rows(), m.cols())));
  }
  const SparseMatrix an = normalize_matrix(m);
  const Eigen::VectorXd trivial = m.col_degrees.cwiseSqrt().normalized();
  const std::size_t dim = embedding_dimension(k);
  SvdReport svd = deflated_singular_triples(an, trivial, dim, options);

  Embedding e;
  e.coords.resize(static_cast<Eigen::Index>(m.rows() + m.cols()), static_cast<Eigen::Index>(dim));
  const Eigen::VectorXd row_scale = m.row_degrees.cwiseSqrt().cwiseInverse();
  const Eigen::VectorXd col_scale = m.col_degrees.cwiseSqrt().cwiseInverse();
  const auto w = static_cast<Eigen::Index>(m.rows());
  for (std::size_t c = 0; c < dim; ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    e.coords.col(col).head(w) = row_scale.cwiseProduct(svd.triples[c].u);
    e.coords.col(col).tail(static_cast<Eigen::Index>(m.cols())) =
        col_scale.cwiseProduct(svd.triples[c].v);
  }
  e.triples = std::move(svd.triples);
  e.iterations = svd.iterations;
  e.residual = svd.residual;
  return e;
}

// ---------------------------------------------------------------------------
// Partitioning

std::vector<std::size_t> kmeans_partition(const Eigen::MatrixXd& points, std::size_t k,
                                          std::uint64_t seed, std::size_t restarts) {
  if (k == 0) precondition("k-means needs k >= 1");
  if (static_cast<std::size_t>(points.rows()) < k) {
    precondition("k-means needs at least k points");
  }
  if (k == 1) return std::vector<std::size_t>(static_cast<std::size_t>(points.rows()), 0);

  std::mt19937_64 gen(seed);
  KmeansRun best;
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    KmeansRun run = kmeans_once(points, k, gen);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  return best.labels;
}

std::vector<std::size_t> assign_word_clusters(const SparseMatrix& a,
                                              std::span<const std::size_t> doc_labels,
                                              std::size_t k) {
  check_labels(doc_labels, static_cast<std::size_t>(a.cols()), k, "document");
  std::vector<double> sums(static_cast<std::size_t>(a.rows()) * k, 0.0);
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    const std::size_t m = doc_labels[static_cast<std::size_t>(j)];
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      sums[static_cast<std::size_t>(it.row()) * k + m] += it.value();
    }
  }
  std::vector<std::size_t> out(static_cast<std::size_t>(a.rows()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = argmax_with_ties(std::span<const double>(sums).subspan(i * k, k));
  }
  return out;
}

std::vector<std::size_t> assign_doc_clusters(const SparseMatrix& a,
                                             std::span<const std::size_t> word_labels,
                                             std::size_t k) {
  check_labels(word_labels, static_cast<std::size_t>(a.rows()), k, "word");
  std::vector<std::size_t> out(static_cast<std::size_t>(a.cols()));
  std::vector<double> sums(k);
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      sums[word_labels[static_cast<std::size_t>(it.row())]] += it.value();
    }
    out[static_cast<std::size_t>(j)] = argmax_with_ties(sums);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph cuts

BipartiteGraph BipartiteGraph::from_matrix(const TermDocMatrix& m) {
  BipartiteGraph g;
  g.n_terms = m.rows();
  g.labels = m.terms;
  g.labels.insert(g.labels.end(), m.docs.begin(), m.docs.end());
  for (Eigen::Index j = 0; j < m.counts.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m.counts, j); it; ++it) {
      if (it.value() > 0) {
        g.edges.push_back({static_cast<std::size_t>(it.row()),
                           g.n_terms + static_cast<std::size_t>(j), it.value()});
      }
    }
  }
  return g;
}

double ratio_cut(const BipartiteGraph& g, std::span<const std::size_t> side1,
                 std::span<const std::size_t> side2) {
  if (side1.empty() || side2.empty()) {
    throw Error(ErrorKind::EmptySide, "cocluster", "ratio cut needs two nonempty sides");
  }
  std::vector<int> side(g.vertex_count(), 0);
  for (auto v : side1) {
    if (v >= side.size() || side[v] != 0) precondition("sides must partition the vertices");
    side[v] = 1;
  }
  for (auto v : side2) {
    if (v >= side.size() || side[v] != 0) precondition("sides must partition the vertices");
    side[v] = 2;
  }
  if (std::find(side.begin(), side.end(), 0) != side.end()) {
    precondition("sides must cover every vertex");
  }
  double cut = 0;
  for (const auto& e : g.edges) {
    if (side[e.a] != side[e.b]) cut += e.weight;
  }
  return cut / static_cast<double>(side1.size()) + cut / static_cast<double>(side2.size());
}

CutResult brute_force_min_ratio_cut(const BipartiteGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteForceMaxVertices) {
    throw Error(ErrorKind::TooLarge, "cocluster",
                std::to_string(n) + " vertices exceed the exhaustive limit of " +
                    std::to_string(kBruteForceMaxVertices));
  }
  if (n < 2) precondition("a 2-partition needs at least two vertices");

  // Vertex ids in label order; bit r of a ranked mask is the r-th label.
  std::vector<std::size_t> by_label(n);
  std::iota(by_label.begin(), by_label.end(), 0);
  std::stable_sort(by_label.begin(), by_label.end(),
                   [&](auto x, auto y) { return g.labels[x] < g.labels[y]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[by_label[r]] = r;

  const std::uint32_t full = (1u << n) - 1u;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_seq;

  // Sorted label ranks of side 1; std::vector comparison then gives the
  // lexicographic order of the label sequences.
  auto sequence = [&](std::uint32_t ranked) {
    std::vector<std::size_t> seq;
    for (std::size_t r = 0; r < n; ++r) {
      if ((ranked >> r) & 1u) seq.push_back(r);
    }
    return seq;
  };

  auto to_ranked = [&](std::uint32_t mask) {
    std::uint32_t ranked = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) ranked |= 1u << rank[v];
    }
    return ranked;
  };

  for (std::uint32_t mask = 1; mask < full; ++mask) {
    double cut = 0;
    for (const auto& e : g.edges) {
      if (((mask >> e.a) & 1u) != ((mask >> e.b) & 1u)) cut += e.weight;
    }
    const auto count1 = static_cast<std::size_t>(std::popcount(mask));
    const double value = cut / static_cast<double>(count1) + cut / static_cast<double>(n - count1);
    const double tol = best_seq.empty() ? 0.0 : kTieTolerance * std::max(1.0, best_value);
    if (best_seq.empty() || value < best_value - tol) {
      best_value = value;
      best_seq = sequence(to_ranked(mask));
    } else if (std::fabs(value - best_value) <= tol) {
      auto seq = sequence(to_ranked(mask));
      if (seq < best_seq) best_seq = std::move(seq);
    }
  }

  CutResult out;
  out.value = best_value;
  for (auto r : best_seq) out.side1.push_back(by_label[r]);
  return out;
}

// ---------------------------------------------------------------------------
// End to end

std::vector<std::vector<std::size_t>> CoClustering::word_clusters() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < word_labels.size(); ++i) out[word_labels[i]].push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> CoClustering::doc_clusters() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t j = 0; j < doc_labels.size(); ++j) out[doc_labels[j]].push_back(j);
  return out;
}

CoClustering cocluster(const TermDocMatrix& m, std::size_t k, std::uint64_t seed,
                       const CoclusterOptions& options) {
  if (k == 0) precondition("cluster count must be at least 1");
  CoClustering result;
  if (k == 1) {
    result.k = 1;
    result.word_labels.assign(m.rows(), 0);
    result.doc_labels.assign(m.cols(), 0);
    return result;
  }

  Embedding emb = spectral_embed(m, k, options.svd);
  result.embedding = emb.coords;
  for (const auto& t : emb.triples) result.singular_values.push_back(t.value);

  const auto groups = kmeans_partition(emb.coords, k, seed, options.kmeans_restarts);

  // Keep only groups that own at least one document.
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> remap(k, kUnset);
  std::size_t kept = 0;
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (groups[m.rows() + j] == g) {
        remap[g] = kept++;
        break;
      }
    }
  }
  result.dropped_groups = k - kept;
  std::vector<std::size_t> docs(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) docs[j] = remap[groups[m.rows() + j]];

  std::vector<std::size_t> words = assign_word_clusters(m.counts, docs, kept);
  for (std::size_t pass = 1; pass <= options.refine_passes; ++pass) {
    if (pass > 1) words = assign_word_clusters(m.counts, docs, kept);
    docs = assign_doc_clusters(m.counts, words, kept);
  }
  result.word_labels = std::move(words);
  result.doc_labels = std::move(docs);
  result.dropped_groups += canonicalize(result, kept);
  return result;
}

double two_way_ratio_cut(const TermDocMatrix& m, const CoClustering& c) {
  if (c.k != 2) precondition("two-way ratio cut needs exactly two clusters");
  const BipartiteGraph g = BipartiteGraph::from_matrix(m);
  std::vector<std::size_t> side1;
  std::vector<std::size_t> side2;
  for (std::size_t i = 0; i < m.rows(); ++i) (c.word_labels[i] == 0 ? side1 : side2).push_back(i);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    (c.doc_labels[j] == 0 ? side1 : side2).push_back(m.rows() + j);
  }
  return ratio_cut(g, side1, side2);
}

}  // namespace coindex
