#include "doctest.h"
#include "fano/instance_forge.hpp"

using namespace fano;

TEST_CASE("random forms are deterministic and well formed") {
  const FanoType t(1, 4, {2, 2});
  const FormSystem a = random_form_system(t, 42), b = random_form_system(t, 42);
  CHECK(a == b);
  CHECK_FALSE(a == random_form_system(t, 43));
  REQUIRE(a.forms().size() == 2);
  for (const auto& f : a.forms()) {
    CHECK(f.num_vars() == 5);
    CHECK(f.is_homogeneous());
    CHECK(f.total_degree() == 2);
    CHECK(f.num_terms() <= 15);
  }
  CHECK(coefficient_space_dim(t) == 30);
}

TEST_CASE("random coefficients stay in the height box") {
  Rng rng(1);
  for (int k = 0; k < 500; ++k) {
    const GaussianRational z = random_gaussian(rng);
    for (const Rational* q : {&z.re(), &z.im()}) {
      CHECK(abs(q->get_num()) <= 10);
      CHECK(q->get_den() <= 10);
    }
  }
}

TEST_CASE("containment constraint at the coordinate plane") {
  const FanoType t(1, 4, {2, 2});
  const ChartPoint ell = default_ell(t);
  const ExactMatrix c = containment_constraints(t, ell).matrix;
  CHECK(c.rows() == 6);
  CHECK(c.cols() == 30);
  // x0^2 vanishes on the span of the last two coordinates: its column is zero.
  for (std::size_t i = 0; i < c.rows(); ++i) CHECK(c(i, 0).is_zero());
}

TEST_CASE("tangency constraints are linear in v") {
  const FanoType t(1, 4, {2, 2});
  const ChartPoint ell{ExactVector{1, 0, GaussianRational::i(), 2, 0, 0}};
  TangentVector v1{ExactVector(6)}, v2{ExactVector(6)}, sum{ExactVector(6)};
  v1.coords[0] = 1;
  v1.coords[3] = 2;
  v2.coords[1] = GaussianRational::i();
  v2.coords[5] = -3;
  for (std::size_t k = 0; k < 6; ++k) sum.coords[k] = v1.coords[k] + v2.coords[k];
  const ExactMatrix a = tangency_constraints(t, ell, v1).matrix, b = tangency_constraints(t, ell, v2).matrix;
  const ExactMatrix s = tangency_constraints(t, ell, sum).matrix;
  CHECK(s.rows() == 6);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) CHECK(s(i, j) == a(i, j) + b(i, j));
  CHECK_THROWS_AS(tangency_constraints(t, ell, TangentVector{ExactVector(6)}), std::invalid_argument);
}

TEST_CASE("constrained instances have the prescribed zero and tangent") {
  for (const auto& t : {FanoType(1, 4, {2, 2}), FanoType(1, 3, {3}), FanoType(2, 6, {2, 2})}) {
    const ChartPoint ell = default_ell(t);
    const TangentVector v = default_v(t);
    const FormSystem f = constrained_form_system(t, ell, v, 7);
    CHECK(f == constrained_form_system(t, ell, v, 7));
    const SquareSystem g = build_square_system(f);
    CHECK(is_zero_vector(g.evaluate(ell.coords)));
    CHECK(is_zero_vector(jacobian_at(g, ell) * v.coords));
  }
}

TEST_CASE("constraint solution space is large") {
  const FanoType t(1, 4, {2, 2});
  const ExactMatrix c =
      containment_constraints(t, default_ell(t)).matrix.vstack(tangency_constraints(t, default_ell(t), default_v(t)).matrix);
  CHECK(c.rows() == 12);
  CHECK(kernel_basis(c).size() >= 18);
}

TEST_CASE("default tangent has full rank in the chart block") {
  const FanoType t(1, 4, {2, 2});
  const TangentVector v = default_v(t);
  CHECK(v.coords.size() == 6);
  CHECK(v.coords[chart_index(t, 0, 0)] == GaussianRational(1));
  CHECK(v.coords[chart_index(t, 1, 1)] == GaussianRational(1));
  CHECK(v.coords[chart_index(t, 0, 1)].is_zero());
}
