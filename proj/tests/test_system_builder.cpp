#include "doctest.h"
#include "fano/instance_forge.hpp"
#include "fano/system_builder.hpp"
#include "fano/tracker.hpp"

using namespace fano;

namespace {

SparsePoly P(const char* text, std::size_t nv) { return SparsePoly::parse(text, nv); }

ExactVector random_point(Rng& rng, std::size_t m) {
  ExactVector x(m);
  for (auto& c : x) c = random_gaussian(rng);
  return x;
}

}  // namespace

TEST_CASE("plane_matrix layout") {
  const GaussianRational a(1), b(2), c(3), d(4);
  CHECK(plane_matrix(1, 3, ChartPoint{{a, b, c, d}}) == ExactMatrix{{a, b}, {c, d}, {1, 0}, {0, 1}});
  CHECK(plane_matrix(1, 3, ChartPoint{ExactVector(4)}) == ExactMatrix{{0, 0}, {0, 0}, {1, 0}, {0, 1}});
  CHECK(plane_matrix(0, 2, ChartPoint{{a, b}}) == ExactMatrix{{a}, {b}, {1}});
  CHECK_THROWS_AS(plane_matrix(1, 3, ChartPoint{{a}}), DimensionError);
}

TEST_CASE("restrict_form") {
  // Chart variables a, b, c, d then plane parameters s, t.
  const auto coeffs = restrict_form(P("(1)*x0*x3 + (-1)*x1*x2", 4), 1);
  REQUIRE(coeffs.size() == 3);
  const std::size_t R = 4;
  auto v = [&](std::size_t k) { return SparsePoly::variable(R, k); };
  CHECK(coeffs[0] == v(2) * GaussianRational(-1));
  CHECK(coeffs[1] == v(0) - v(3));
  CHECK(coeffs[2] == v(1));
  for (const auto& c : restrict_form(SparsePoly(4), 1)) CHECK(c.is_zero());
}

TEST_CASE("square system sizes") {
  CHECK(build_square_system(random_form_system(FanoType(1, 3, {3}), 1)).num_vars() == 4);
  CHECK(build_square_system(random_form_system(FanoType(1, 4, {2, 2}), 1)).num_vars() == 6);
  const SquareSystem g = build_square_system(random_form_system(FanoType(2, 6, {2, 2}), 1));
  CHECK(g.num_vars() == 12);
  for (int d : g.equation_degrees()) CHECK(d <= 2);
  CHECK_THROWS_AS(build_square_system(random_form_system(FanoType(1, 4, {3}), 1)), std::invalid_argument);
}

TEST_CASE("form system validation") {
  const FanoType t(1, 3, {3});
  CHECK_THROWS_AS(FormSystem(t, {P("(1)*x0^2", 4)}), std::invalid_argument);
  CHECK_THROWS_AS(FormSystem(t, {P("(1)*x0^3 + (1)*x1", 4)}), std::invalid_argument);
  CHECK_THROWS_AS(FormSystem(t, {}), std::invalid_argument);
  const FormSystem f = random_form_system(t, 9);
  CHECK(FormSystem::from_coefficients(t, f.coefficient_vector()) == f);
}

TEST_CASE("jacobian and hessian on a toy system") {
  const SquareSystem g({P("(1)*x0^2 + (-1)*x1", 2), P("(1)*x1", 2)});
  const ChartPoint origin{ExactVector(2)};
  CHECK(jacobian_at(g, origin) == ExactMatrix{{0, -1}, {0, 1}});
  CHECK(hessian_quadratic(g, origin, TangentVector{{1, 0}}) == ExactVector{2, 0});
  CHECK(hessian_quadratic(g, origin, TangentVector{{3, 0}}) == ExactVector{18, 0});

  const SquareSystem lin({P("(2)*x0 + (i)*x1 + (1)", 2), P("(1)*x1", 2)});
  CHECK(jacobian_at(lin, origin) == jacobian_at(lin, ChartPoint{{5, 7}}));
  CHECK(is_zero_vector(hessian_quadratic(lin, ChartPoint{{5, 7}}, TangentVector{{1, 2}})));
}

TEST_CASE("jacobian matches divided differences") {
  const FanoType t(1, 4, {2, 2});
  const SquareSystem g = build_square_system(random_form_system(t, 3));
  Rng rng(8);
  const ExactVector x = random_point(rng, g.num_vars());
  const ExactMatrix j = g.jacobian_at(x);
  const GaussianRational h(Rational(1, 1000000));
  const ExactVector gx = g.evaluate(x);
  for (std::size_t k = 0; k < g.num_vars(); ++k) {
    ExactVector xp = x;
    xp[k] += h;
    const ExactVector gp = g.evaluate(xp);
    for (std::size_t i = 0; i < g.num_vars(); ++i) {
      const GaussianRational diff = (gp[i] - gx[i]) / h - j(i, k);
      // Quadratic equations: the error is exactly h times a second derivative.
      CHECK(std::abs(diff.to_complex()) < 1e-4);
    }
  }
}

TEST_CASE("float system agrees with exact evaluation") {
  const SquareSystem g = build_square_system(random_form_system(FanoType(1, 3, {3}), 4));
  const FloatSystem fs(g);
  Rng rng(3);
  const ExactVector x = random_point(rng, 4);
  FloatPoint xf;
  for (const auto& c : x) xf.push_back(c.to_complex());
  const auto vals = fs.values(xf);
  const ExactVector exact = g.evaluate(x);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(vals(static_cast<Eigen::Index>(i)) - exact[i].to_complex()) < 1e-9);
}

TEST_CASE("square system is linear in the instance") {
  const FanoType t(1, 4, {2, 2});
  const FormSystem a = random_form_system(t, 1), b = random_form_system(t, 2);
  const SquareSystem ga = build_square_system(a), gb = build_square_system(b), gab = build_square_system(a + b);
  for (std::size_t i = 0; i < ga.num_vars(); ++i) CHECK(gab.polys()[i] == ga.polys()[i] + gb.polys()[i]);
}

TEST_CASE("equations vanish exactly when the plane lies on the forms") {
  // G(x) = 0 iff every f vanishes on the plane of x; check the plane through a
  // random point against substitution of random points of that plane.
  const FanoType t(1, 4, {2, 2});
  const FormSystem f = random_form_system(t, 5);
  const SquareSystem g = build_square_system(f);
  Rng rng(6);
  const ChartPoint x{random_point(rng, g.num_vars())};
  const ExactMatrix plane = plane_matrix(t, x);
  const ExactVector gx = g.evaluate(x.coords);
  std::size_t row = 0;
  for (const auto& form : f.forms()) {
    const ExactVector restricted = restrict_form_at(form, plane);
    for (const auto& c : restricted) CHECK(c == gx[row++]);
    const ExactVector s = random_point(rng, 2);
    const ExactVector pt = plane * s;
    const bool vanishes = is_zero_vector(restricted);
    CHECK(form.evaluate(pt).is_zero() == vanishes);
  }
}

TEST_CASE("coordinate change preserves degrees") {
  const FanoType t(1, 3, {3});
  const FormSystem f = random_form_system(t, 2);
  ExactMatrix a = ExactMatrix::identity(4);
  a(0, 1) = 2;
  a(3, 2) = GaussianRational::i();
  const FormSystem h = apply_coordinate_change(f, a);
  CHECK(h.forms()[0].is_homogeneous());
  CHECK(h.forms()[0].total_degree() == 3);
  CHECK(apply_coordinate_change(f, ExactMatrix::identity(4)) == f);
}
