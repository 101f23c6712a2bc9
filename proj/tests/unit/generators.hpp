#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hlab/affine.hpp"
#include "hlab/ifs.hpp"
#include "hlab/lattice.hpp"
#include "hlab/metric.hpp"
#include "hlab/word.hpp"

namespace hlab::testing {

inline std::string data_path(const std::string& name) { return std::string(HLAB_TEST_DATA_DIR) + "/" + name; }

inline IifsSpec cantor() { return IifsSpec::load(data_path("cantor.json")); }

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline PointCloud random_cloud(Rng& rng, std::size_t dim, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> flat(dim * n);
  for (double& x : flat) x = uniform(rng, lo, hi);
  return PointCloud(dim, std::move(flat));
}

// Coordinates on a coarse grid so exact duplicates and ties occur.
inline PointCloud random_grid_cloud(Rng& rng, std::size_t dim, std::size_t n, int cells = 8) {
  std::vector<double> flat(dim * n);
  for (double& x : flat) x = static_cast<double>(pick(rng, cells)) / cells;
  return PointCloud(dim, std::move(flat));
}

// Similarity-like map with a rotation, certified lip = scale.
inline AffineContraction random_contraction(Rng& rng, std::size_t dim) {
  double scale = uniform(rng, 0.05, 0.95);
  std::vector<double> m(dim * dim, 0.0);
  if (dim == 2) {
    double t = uniform(rng, 0.0, 6.283185307179586);
    m = {scale * std::cos(t), -scale * std::sin(t), scale * std::sin(t), scale * std::cos(t)};
  } else {
    for (std::size_t k = 0; k < dim; ++k) m[k * dim + k] = (k % 2 ? -scale : scale);
  }
  std::vector<double> b(dim);
  for (double& x : b) x = uniform(rng, -1.0, 1.0);
  return AffineContraction(dim, std::move(m), std::move(b), scale, scale * (1.0 - 1e-12));
}

inline WordPrefix random_prefix(Rng& rng, const std::vector<std::string>& alphabet, std::size_t depth) {
  std::vector<std::string> letters;
  for (std::size_t k = 0; k < depth; ++k) letters.push_back(alphabet[pick(rng, alphabet.size())]);
  return WordPrefix(Word(std::move(letters)));
}

inline SelfMapTable random_table(Rng& rng, std::size_t universe, std::size_t maps) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < universe; ++k) labels.push_back(std::to_string(k));
  std::vector<std::string> indices;
  std::vector<std::vector<std::size_t>> tables;
  for (std::size_t k = 0; k < maps; ++k) {
    indices.push_back(std::to_string(k + 1));
    std::vector<std::size_t> t(universe);
    for (std::size_t& y : t) y = pick(rng, universe);
    tables.push_back(std::move(t));
  }
  return SelfMapTable(FiniteUniverse(labels), indices, tables);
}

}  // namespace hlab::testing
