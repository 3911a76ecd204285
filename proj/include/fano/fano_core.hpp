#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fano/gaussian.hpp"
#include "fano/polynomial.hpp"

namespace fano {

/// Combinatorial type (r, n, d_1..d_s) of a problem: r-planes in P^n on a
/// complete intersection of s hypersurfaces of degrees d_i.
///
/// Construction validates d_i >= 2 and 2r <= n - s, and sorts the degrees
/// ascending so that permuted degree lists compare equal.
class FanoType {
 public:
  FanoType(int r, int n, std::vector<int> degrees);

  int r() const { return r_; }
  int n() const { return n_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t s() const { return degrees_.size(); }

  /// (n - r)(r + 1): dimension of the Grassmannian and of the chart.
  std::size_t chart_dim() const { return static_cast<std::size_t>((n_ - r_) * (r_ + 1)); }

  /// "(1,4,(2,2))"
  std::string to_string() const;
  /// CLI form "r,n,d1:d2:..."; also accepts "r,n,d1,d2,..." .
  static FanoType parse(std::string_view text);

  friend auto operator<=>(const FanoType&, const FanoType&) = default;

 private:
  int r_;
  int n_;
  std::vector<int> degrees_;
};

struct FanoProblem {
  FanoType type;
  Integer degree;
};

Integer binomial(long n, long k);

/// Expected dimension (r+1)(n-r) - sum C(d_i + r, r); may be negative.
long delta(const FanoType& t);

/// Product of a_0 x_0 + ... + a_r x_r over all a in N^{r+1} with |a| = d.
SparsePoly q_poly(int r, int d);
/// prod_{i<j} (x_i - x_j) in r+1 variables.
SparsePoly vandermonde(int r);

/// Number of r-planes on a general complete intersection of type t: the
/// coefficient of x_0^n x_1^(n-1) ... x_r^(n-r) in Q_{r,d}(x) V(x).
///
/// The product is never fully expanded. Linear factors are grouped by their
/// first variable and multiplied group by group; a partial monomial is
/// dropped as soon as some exponent exceeds its target or can no longer
/// reach it with the factors that remain. Throws std::invalid_argument
/// unless delta(t) == 0.
Integer fano_degree(const FanoType& t);

/// The degree modulo a prime p, by torus localization on the Grassmannian
/// with weights 1..n+1: a sum over coordinate (r+1)-planes evaluated with
/// discrete logarithms mod p. Needs p > d_max (n+1) and p < 2^27; returns
/// nullopt outside that range. Cost is C(n+1, r+1) * (r+1)(n-r), which is
/// far below the exact extraction when r >= 2 and n is large.
std::optional<std::uint32_t> fano_degree_mod(const FanoType& t, std::uint32_t p);

struct DegreeLowerBound {
  Integer refined;
  Integer crude;
};

DegreeLowerBound degree_lower_bound(const FanoType& t);

/// Every problem with delta = 0 and degree < degree_cap, sorted by
/// (degree, r, n, degrees).
std::vector<FanoProblem> enumerate_fano_problems(const Integer& degree_cap);

/// True for (1,3,(3)) and (r,2r+2,(2,2)): the problems whose planes meet
/// and whose Galois group is a Coxeter group rather than alternating or
/// symmetric.
bool is_enriched(const FanoType& t);

/// A row of the reference tables: the type plus an optional label (the
/// Galois group for the small table).
struct TableRow {
  FanoType type;
  std::string label;
};

/// Problems of small degree with their known Galois groups.
const std::vector<TableRow>& small_degree_table();
/// The twelve large problems shown to have full symmetric Galois group.
const std::vector<TableRow>& large_problem_table();

}  // namespace fano
