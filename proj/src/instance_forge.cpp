#include "fano/instance_forge.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fano {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FANO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 20240917;
}

GaussianRational random_gaussian(Rng& rng) {
  auto part = [&] {
    const long num = rng.uniform_int(-10, 10);
    const long den = rng.uniform_int(1, 10);
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  Rational re = part();
  Rational im = part();
  return {re, im};
}

FormSystem random_form_system(const FanoType& t, std::uint64_t seed) {
  Rng rng(seed);
  ExactVector coeffs(coefficient_space_dim(t));
  for (auto& c : coeffs) c = random_gaussian(rng);
  return FormSystem::from_coefficients(t, coeffs);
}

namespace {

/// For every monomial x^m of every form degree, the coefficients of
/// x^m(P(e) t) in the plane parameters t, where P(e) = P0 + e P1. Column
/// `value` holds the e^0 part and `slope` the e^1 part, rows in the order
/// of the equations of G.
struct RestrictionJets {
  ExactMatrix value;
  ExactMatrix slope;
};

RestrictionJets restriction_jets(const FanoType& t, const ChartPoint& ell, const TangentVector* v) {
  const auto cols = static_cast<std::size_t>(t.r() + 1);
  const auto nv = static_cast<std::size_t>(t.n() + 1);
  const std::size_t ring = cols + 1;  // t_0..t_r, e
  const ExactMatrix p0 = plane_matrix(t, ell);
  ExactMatrix p1(nv, cols);
  if (v) {
    if (v->coords.size() != t.chart_dim()) throw DimensionError("tangent vector has the wrong length");
    for (std::size_t i = 0; i + cols < nv; ++i)
      for (std::size_t j = 0; j < cols; ++j) p1(i, j) = v->coords[i * cols + j];
  }
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < nv; ++i) {
    SparsePoly img(ring);
    for (std::size_t j = 0; j < cols; ++j) {
      Monomial a(ring);
      a[j] = 1;
      img.add_term(a, p0(i, j));
      a[cols] = 1;
      img.add_term(a, p1(i, j));
    }
    images.push_back(std::move(img));
  }
  // Powers of the images with e-degree above one dropped.
  auto truncate = [&](SparsePoly p) {
    SparsePoly out(ring);
    for (const auto& [m, c] : p.terms())
      if (m[cols] <= 1) out.add_term(m, c);
    return out;
  };
  std::vector<std::vector<SparsePoly>> powers(nv, {SparsePoly::constant(ring, GaussianRational(1))});

  const std::size_t rows = t.chart_dim();
  const std::size_t ncoef = coefficient_space_dim(t);
  RestrictionJets out{ExactMatrix(rows, ncoef), ExactMatrix(rows, ncoef)};
  std::size_t row0 = 0, col = 0;
  for (int d : t.degrees()) {
    const auto params = monomials_of_degree(cols, static_cast<unsigned>(d));
    for (const Monomial& m : monomials_of_degree(nv, static_cast<unsigned>(d))) {
      SparsePoly prod = SparsePoly::constant(ring, GaussianRational(1));
      for (std::size_t k = 0; k < nv; ++k) {
        if (m[k] == 0) continue;
        auto& pk = powers[k];
        while (pk.size() <= m[k]) pk.push_back(truncate(pk.back() * images[k]));
        prod = truncate(prod * pk[m[k]]);
      }
      for (std::size_t q = 0; q < params.size(); ++q) {
        Monomial a(ring);
        for (std::size_t j = 0; j < cols; ++j) a[j] = params[q][j];
        out.value(row0 + q, col) = prod.coefficient_of(a);
        a[cols] = 1;
        out.slope(row0 + q, col) = prod.coefficient_of(a);
      }
      ++col;
    }
    row0 += params.size();
  }
  return out;
}

}  // namespace

ConstraintSystem containment_constraints(const FanoType& t, const ChartPoint& ell) {
  return {restriction_jets(t, ell, nullptr).value};
}

ConstraintSystem tangency_constraints(const FanoType& t, const ChartPoint& ell, const TangentVector& v) {
  if (is_zero_vector(v.coords)) throw std::invalid_argument("tangent vector must be nonzero");
  return {restriction_jets(t, ell, &v).slope};
}

FormSystem constrained_form_system(const FanoType& t, const ChartPoint& ell, const TangentVector& v,
                                   std::uint64_t seed) {
  if (is_zero_vector(v.coords)) throw std::invalid_argument("tangent vector must be nonzero");
  const RestrictionJets jets = restriction_jets(t, ell, &v);
  const std::vector<ExactVector> basis = kernel_basis(jets.value.vstack(jets.slope));
  if (basis.empty()) throw std::runtime_error("constraints admit only F = 0");
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(seed + attempt);
    ExactVector coeffs(coefficient_space_dim(t));
    for (const auto& b : basis) {
      const GaussianRational c = random_gaussian(rng);
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!b[k].is_zero()) coeffs[k] += c * b[k];
    }
    FormSystem f = FormSystem::from_coefficients(t, coeffs);
    bool degenerate = false;
    for (const auto& form : f.forms()) degenerate = degenerate || form.is_zero();
    if (!degenerate) return f;
    if (attempt > 1000) throw std::runtime_error("no nondegenerate constrained draw");
  }
}

ChartPoint default_ell(const FanoType& t) { return ChartPoint{ExactVector(t.chart_dim())}; }

TangentVector default_v(const FanoType& t) {
  // A rank-one direction w (x) l only constrains the derivative along w, so
  // its whole row w (x) S^* would fall into the kernel. Use the identity in
  // the top (r+1) x (r+1) block instead, which has full rank.
  TangentVector v{ExactVector(t.chart_dim())};
  const auto cols = static_cast<std::size_t>(t.r() + 1);
  for (std::size_t j = 0; j < cols; ++j) v.coords[chart_index(t, j, j)] = GaussianRational(1);
  return v;
}

}  // namespace fano
