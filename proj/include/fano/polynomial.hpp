#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fano/gaussian.hpp"

namespace fano {

/// Raised when operands live in polynomial rings of different arity, or a
/// point/image list has the wrong length.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  Monomial(std::initializer_list<unsigned> exps) : exps_(exps) {}
  explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  std::size_t num_vars() const { return exps_.size(); }
  unsigned operator[](std::size_t k) const { return exps_[k]; }
  unsigned& operator[](std::size_t k) { return exps_[k]; }
  const std::vector<unsigned>& exponents() const { return exps_; }
  unsigned degree() const;

  /// x^a * x^b.
  Monomial operator*(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exps_;
};

/// Graded lexicographic order with x0 > x1 > ... ; "a < b" means a is
/// smaller in that order.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of the given total degree in num_vars variables, in
/// descending graded-lex order (x0^d first).
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, unsigned degree);

/// Sparse multivariate polynomial over Q(i). Zero coefficients are never
/// stored, so two polynomials are equal iff their term maps are equal.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, GaussianRational, GrlexLess>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static SparsePoly constant(std::size_t num_vars, const GaussianRational& c);
  static SparsePoly variable(std::size_t num_vars, std::size_t index);
  /// c * x^m
  static SparsePoly term(const Monomial& m, const GaussianRational& c);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;

  GaussianRational coefficient_of(const Monomial& m) const;
  /// Adds c * x^m, dropping the term if the sum cancels.
  void add_term(const Monomial& m, const GaussianRational& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const GaussianRational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const GaussianRational& c) { return a *= c; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly operator-() const { return *this * GaussianRational(-1); }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  SparsePoly pow(unsigned e) const;
  SparsePoly derivative(std::size_t var) const;

  GaussianRational evaluate(std::span<const GaussianRational> point) const;

  /// Canonical text: terms in descending graded-lex order, each written as
  /// "(a/b+c/d*i)*x0^2*x3"; the zero polynomial is "0".
  std::string to_string() const;
  /// Inverse of to_string. Throws std::invalid_argument on malformed input.
  static SparsePoly parse(std::string_view text, std::size_t num_vars);

 private:
  std::size_t num_vars_ = 0;
  TermMap terms_;
};

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b);
GaussianRational coefficient_of(const SparsePoly& p, const Monomial& m);

/// p(images[0], ..., images[k-1]); every image must share one ring.
SparsePoly substitute_linear(const SparsePoly& p, std::span<const SparsePoly> images);

}  // namespace fano
