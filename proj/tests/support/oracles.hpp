#pragma once

// Test-only reference computations. Nothing here calls into the library
// code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

namespace coindex::testing {

// Rows w1..w4, columns d1..d3.
inline Eigen::MatrixXd m_star() {
  Eigen::MatrixXd a(4, 3);
  a << 2, 0, 0,
       1, 0, 0,
       0, 3, 1,
       0, 1, 2;
  return a;
}

inline std::vector<std::string> labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Dense normalisation straight from the formula.
inline Eigen::MatrixXd dense_normalized(const Eigen::MatrixXd& a) {
  const Eigen::VectorXd r = a.rowwise().sum();
  const Eigen::VectorXd c = a.colwise().sum();
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) / std::sqrt(r(i) * c(j));
  }
  return out;
}

struct DenseSvd {
  Eigen::VectorXd values;
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
};

inline DenseSvd dense_svd(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

// Planted k-block count matrix: in-block entries ~ U{1..5} with probability
// 0.6, off-block mass scaled so it stays at or below `noise` of the total.
struct Planted {
  Eigen::MatrixXd a;
  std::vector<std::size_t> row_labels;
  std::vector<std::size_t> col_labels;
};

inline Planted planted_blocks(std::mt19937_64& gen, std::size_t k, std::size_t rows,
                              std::size_t cols, double noise) {
  Planted p;
  p.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) p.row_labels.push_back(i * k / rows);
  for (std::size_t j = 0; j < cols; ++j) p.col_labels.push_back(j * k / cols);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 5);
  double in_mass = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (p.row_labels[i] == p.col_labels[j] && unit(gen) < 0.6) {
        p.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = count(gen);
        in_mass += p.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  // Guarantee every row and column has an in-block entry.
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (p.row_labels[i] != p.col_labels[j]) continue;
      auto& x = p.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (p.a.row(static_cast<Eigen::Index>(i)).sum() == 0 || p.a.col(static_cast<Eigen::Index>(j)).sum() == 0) {
        x = 1;
        in_mass += 1;
      }
    }
  }
  // Off-block noise: budget is noise * total, total = in + off.
  const double budget = noise * in_mass / (1.0 - noise);
  double off = 0;
  std::uniform_int_distribution<std::size_t> pick_r(0, rows - 1);
  std::uniform_int_distribution<std::size_t> pick_c(0, cols - 1);
  while (off + 1 <= budget) {
    const auto i = pick_r(gen);
    const auto j = pick_c(gen);
    if (p.row_labels[i] == p.col_labels[j]) continue;
    p.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += 1;
    off += 1;
  }
  return p;
}

// Fraction of items whose label matches the planted one under the best
// relabelling (exhaustive over permutations).
inline double recovery_rate(const std::vector<std::size_t>& found,
                            const std::vector<std::size_t>& planted, std::size_t k) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (found[i] < k && perm[found[i]] == planted[i]) ++hits;
    }
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(found.size());
}

// Random term-document matrix with at least two connected components (so a
// zero-cut split exists) and no empty row or column. Total vertices <= max_v.
inline Eigen::MatrixXd zero_cut_matrix(std::mt19937_64& gen, std::size_t max_v) {
  std::uniform_int_distribution<std::size_t> comps_d(2, 3);
  std::size_t comps = comps_d(gen);
  while (comps * 2 > max_v) --comps;
  std::vector<std::size_t> rows_per(comps, 1);
  std::vector<std::size_t> cols_per(comps, 1);
  std::size_t used = comps * 2;
  std::uniform_int_distribution<std::size_t> extra_d(0, max_v - used);
  std::size_t extra = extra_d(gen);
  std::uniform_int_distribution<std::size_t> which(0, comps - 1);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t e = 0; e < extra; ++e) (coin(gen) ? rows_per : cols_per)[which(gen)]++;

  const std::size_t rows = std::accumulate(rows_per.begin(), rows_per.end(), std::size_t{0});
  const std::size_t cols = std::accumulate(cols_per.begin(), cols_per.end(), std::size_t{0});
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::uniform_int_distribution<int> weight(1, 4);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (std::size_t c = 0; c < comps; ++c) {
    // Spanning path keeps each block connected, then random extra edges.
    for (std::size_t i = 0; i < rows_per[c]; ++i) {
      a(static_cast<Eigen::Index>(r0 + i), static_cast<Eigen::Index>(c0 + i % cols_per[c])) = weight(gen);
    }
    for (std::size_t j = 0; j < cols_per[c]; ++j) {
      a(static_cast<Eigen::Index>(r0 + j % rows_per[c]), static_cast<Eigen::Index>(c0 + j)) = weight(gen);
    }
    for (std::size_t i = 0; i < rows_per[c]; ++i) {
      for (std::size_t j = 0; j < cols_per[c]; ++j) {
        if (coin(gen) && coin(gen)) a(static_cast<Eigen::Index>(r0 + i), static_cast<Eigen::Index>(c0 + j)) = weight(gen);
      }
    }
    r0 += rows_per[c];
    c0 += cols_per[c];
  }
  // Shuffle rows and columns so blocks are not contiguous.
  std::vector<Eigen::Index> rp(rows);
  std::vector<Eigen::Index> cp(cols);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), gen);
  std::shuffle(cp.begin(), cp.end(), gen);
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(rp[static_cast<std::size_t>(i)], cp[static_cast<std::size_t>(j)]);
  }
  return out;
}

// Sparse random nonnegative count matrix; some rows/columns may be empty.
inline Eigen::MatrixXd random_sparse_counts(std::mt19937_64& gen, std::size_t rows,
                                            std::size_t cols, double density) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> count(1, 9);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (keep(gen)) a(i, j) = count(gen);
    }
  }
  return a;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("coindex_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace coindex::testing
