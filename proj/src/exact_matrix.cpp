#include "fano/exact_matrix.hpp"

#include <algorithm>

namespace fano {

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = GaussianRational(1);
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<ExactVector>& columns, std::size_t rows) {
  ExactMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

ExactVector ExactMatrix::row(std::size_t i) const {
  return ExactVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ExactVector ExactMatrix::column(std::size_t j) const {
  ExactVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  ExactVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& a = (*this)(i, j);
      if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
    }
  }
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (o.rows_ != cols_) throw DimensionError("matrix product size mismatch");
  ExactMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) out(i, j) += a * o(k, j);
    }
  return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& below) const {
  if (rows_ > 0 && below.rows_ > 0 && below.cols_ != cols_) throw DimensionError("vstack column mismatch");
  ExactMatrix out(rows_ + below.rows_, rows_ ? cols_ : below.cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

RowEchelon row_reduce(ExactMatrix m) {
  RowEchelon out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    // Smallest-height nonzero entry in the column keeps coefficient growth down.
    std::size_t best = rows;
    std::size_t best_height = 0;
    for (std::size_t i = lead; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      std::size_t h = m(i, c).height();
      if (best == rows || h < best_height) {
        best = i;
        best_height = h;
      }
    }
    if (best == rows) continue;
    if (best != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(best, j), m(lead, j));
    GaussianRational inv = m(lead, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!m(lead, j).is_zero()) m(lead, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || m(i, c).is_zero()) continue;
      GaussianRational factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(lead, j).is_zero()) m(i, j) -= factor * m(lead, j);
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const ExactMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  RowEchelon ech = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<ExactVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    ExactVector v(cols);
    v[free] = GaussianRational(1);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const ExactMatrix& m, const ExactVector& b) {
  if (b.size() != m.rows()) throw DimensionError("right-hand side length mismatch");
  const std::size_t cols = m.cols();
  ExactMatrix aug(m.rows(), cols + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols) = b[i];
  }
  RowEchelon ech = row_reduce(std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == cols) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(cols, GaussianRational());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) sol.particular[ech.pivot_cols[r]] = ech.reduced(r, cols);
  sol.kernel = kernel_basis(m);
  return sol;
}

bool in_column_span(const ExactMatrix& m, const ExactVector& w) {
  if (w.size() != m.rows()) throw DimensionError("vector length mismatch");
  if (is_zero_vector(w)) return true;
  ExactMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = w[i];
  }
  RowEchelon ech = row_reduce(std::move(aug));
  return ech.pivot_cols.empty() || ech.pivot_cols.back() != m.cols();
}

bool is_zero_vector(const ExactVector& v) {
  return std::all_of(v.begin(), v.end(), [](const GaussianRational& z) { return z.is_zero(); });
}

}  // namespace fano
