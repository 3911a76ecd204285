#pragma once

// Independent reference implementations used to check the library.

#include <map>
#include <set>
#include <vector>

#include "fano/exact_matrix.hpp"
#include "fano/monodromy.hpp"
#include "fano/random.hpp"

namespace oracle {

using fano::ExactMatrix;
using fano::GaussianRational;

// Plain Gaussian elimination, first nonzero entry as pivot.
inline std::size_t naive_rank(ExactMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(p, k));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const GaussianRational f = m(i, c) / m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

inline ExactMatrix append_column(const ExactMatrix& m, const fano::ExactVector& w) {
  ExactMatrix out(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    out(i, m.cols()) = w[i];
  }
  return out;
}

inline bool in_span(const ExactMatrix& m, const fano::ExactVector& w) { return naive_rank(append_column(m, w)) == naive_rank(m); }

// Small matrix with entries in {-3..3} + {-1..1}i, often rank deficient:
// some rows are combinations of earlier ones.
inline ExactMatrix random_matrix(fano::Rng& rng, std::size_t rows, std::size_t cols) {
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i >= 2 && rng.uniform_int(0, 2) == 0) {
      const GaussianRational a(rng.uniform_int(-2, 2)), b(rng.uniform_int(-2, 2));
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = a * m(0, j) + b * m(1, j);
      continue;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (rng.uniform_int(0, 3) == 0) continue;
      m(i, j) = GaussianRational(fano::Rational(rng.uniform_int(-3, 3)), fano::Rational(rng.uniform_int(-1, 1)));
    }
  }
  return m;
}

// Order of the group generated by gens, by closing the set under products.
inline std::size_t closure_size(const std::vector<fano::Permutation>& gens, std::size_t n) {
  std::set<std::vector<std::uint32_t>> seen{fano::Permutation::identity(n).images()};
  std::vector<fano::Permutation> frontier{fano::Permutation::identity(n)};
  while (!frontier.empty()) {
    std::vector<fano::Permutation> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        fano::Permutation q = g * p;
        if (seen.insert(q.images()).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace oracle
