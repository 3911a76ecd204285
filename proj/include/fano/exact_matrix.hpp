#pragma once

#include <optional>
#include <vector>

#include "fano/gaussian.hpp"
#include "fano/polynomial.hpp"

namespace fano {

using ExactVector = std::vector<GaussianRational>;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

  static ExactMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of equal length).
  static ExactMatrix from_columns(const std::vector<ExactVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ExactVector row(std::size_t i) const;
  ExactVector column(std::size_t j) const;

  ExactVector operator*(const ExactVector& v) const;
  ExactMatrix operator*(const ExactMatrix& o) const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

  /// Stacks the rows of `below` underneath this matrix.
  ExactMatrix vstack(const ExactMatrix& below) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// Reduced row echelon form with the pivot column of every nonzero row.
struct RowEchelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

RowEchelon row_reduce(ExactMatrix m);
std::size_t rank(const ExactMatrix& m);

/// Exact basis of the right kernel, one vector per free column of the
/// echelon form. Empty iff the matrix is injective.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

struct AffineSolution {
  ExactVector particular;
  std::vector<ExactVector> kernel;
};

/// All solutions of m*x = b, or nullopt when b is not in the image.
std::optional<AffineSolution> solve_affine(const ExactMatrix& m, const ExactVector& b);

bool in_column_span(const ExactMatrix& m, const ExactVector& w);

bool is_zero_vector(const ExactVector& v);

}  // namespace fano
