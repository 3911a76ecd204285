#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fano/exact_matrix.hpp"
#include "fano/fano_core.hpp"
#include "fano/polynomial.hpp"

namespace fano {

/// s homogeneous forms of degrees d_1..d_s in the n+1 homogeneous
/// coordinates of P^n.
class FormSystem {
 public:
  /// Throws std::invalid_argument unless forms[i] is homogeneous of degree
  /// d_i (or zero) in n+1 variables and there is one form per degree.
  FormSystem(FanoType type, std::vector<SparsePoly> forms);

  const FanoType& type() const { return type_; }
  const std::vector<SparsePoly>& forms() const { return forms_; }
  std::size_t num_vars() const { return static_cast<std::size_t>(type_.n() + 1); }

  /// Coordinates in the coefficient space: for each form, its coefficients
  /// on monomials_of_degree(n+1, d_i) (descending graded-lex).
  ExactVector coefficient_vector() const;
  static FormSystem from_coefficients(const FanoType& type, const ExactVector& coeffs);

  friend FormSystem operator+(const FormSystem& a, const FormSystem& b);
  friend FormSystem operator*(const FormSystem& a, const GaussianRational& c);
  friend bool operator==(const FormSystem&, const FormSystem&) = default;

 private:
  FanoType type_;
  std::vector<SparsePoly> forms_;
};

/// Dimension of the coefficient space: sum of C(d_i + n, n).
std::size_t coefficient_space_dim(const FanoType& t);

/// Local coordinates of an r-plane: the top (n-r) x (r+1) block of its
/// representing matrix, row-major. The bottom block is the identity.
struct ChartPoint {
  ExactVector coords;
};

/// A direction in the chart (tangent space of the Grassmannian at a point).
struct TangentVector {
  ExactVector coords;
};

inline std::size_t chart_index(const FanoType& t, std::size_t row, std::size_t col) {
  return row * static_cast<std::size_t>(t.r() + 1) + col;
}

/// The (n+1) x (r+1) matrix whose columns span the plane with coordinates x.
/// Throws DimensionError if x has the wrong length.
ExactMatrix plane_matrix(int r, int n, const ChartPoint& x);
inline ExactMatrix plane_matrix(const FanoType& t, const ChartPoint& x) { return plane_matrix(t.r(), t.n(), x); }

/// Coefficients (in the r+1 plane parameters, descending graded-lex) of the
/// restriction of a degree-d form in n+1 variables to the r-plane with
/// symbolic chart coordinates. Each coefficient is a polynomial in the
/// (n-r)(r+1) chart variables. Throws std::invalid_argument for a
/// non-homogeneous form.
std::vector<SparsePoly> restrict_form(const SparsePoly& f, int r);

/// Same restriction at a fixed exact plane: the C(d+r, r) numeric
/// coefficients. `plane` has n+1 rows and r+1 columns.
ExactVector restrict_form_at(const SparsePoly& f, const ExactMatrix& plane);

/// Square polynomial system in m variables with exact first and second
/// derivatives. Hessians are built per equation on first use.
class SquareSystem {
 public:
  /// Throws std::invalid_argument unless there are as many polynomials as
  /// variables.
  explicit SquareSystem(std::vector<SparsePoly> polys);
  SquareSystem(std::vector<SparsePoly> polys, FormSystem provenance);

  std::size_t num_vars() const { return polys_.size(); }
  const std::vector<SparsePoly>& polys() const { return polys_; }
  /// jacobian_polys()[i][j] = d g_i / d x_j
  const std::vector<std::vector<SparsePoly>>& jacobian_polys() const { return jacobian_; }
  const std::optional<FormSystem>& provenance() const { return provenance_; }

  std::vector<int> equation_degrees() const;

  ExactVector evaluate(const ExactVector& x) const;
  ExactMatrix jacobian_at(const ExactVector& x) const;
  /// Entry i is v^T H_i(x) v, H_i the Hessian of equation i.
  ExactVector hessian_quadratic(const ExactVector& x, const ExactVector& v) const;

 private:
  struct HessianCache;

  const std::vector<std::vector<SparsePoly>>& hessian(std::size_t eq) const;

  std::vector<SparsePoly> polys_;
  std::vector<std::vector<SparsePoly>> jacobian_;
  std::optional<FormSystem> provenance_;
  std::shared_ptr<HessianCache> hessians_;
};

/// Concatenation of restrict_form over all forms of F: the system whose
/// zeros are the r-planes on V(F) inside the chart. Throws
/// std::invalid_argument unless delta = 0.
SquareSystem build_square_system(const FormSystem& forms);

/// Convenience overloads taking chart objects.
ExactMatrix jacobian_at(const SquareSystem& g, const ChartPoint& x);
ExactVector hessian_quadratic(const SquareSystem& g, const ChartPoint& x, const TangentVector& v);

/// F composed with the linear change of coordinates x -> A x.
FormSystem apply_coordinate_change(const FormSystem& forms, const ExactMatrix& a);

}  // namespace fano
