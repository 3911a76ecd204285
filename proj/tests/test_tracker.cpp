#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fano/tracker.hpp"

using namespace fano;

namespace {

SparsePoly P(const char* text, std::size_t nv) { return SparsePoly::parse(text, nv); }

std::vector<double> sorted_real_parts(const std::vector<FloatPoint>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) out.push_back(p[0].real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("total degree start points") {
  const auto pts = total_degree_start_points({2, 3});
  REQUIRE(pts.size() == 6);
  for (const auto& p : pts) {
    CHECK(std::abs(std::pow(p[0], 2) - 1.0) < 1e-12);
    CHECK(std::abs(std::pow(p[1], 3) - 1.0) < 1e-12);
  }
}

TEST_CASE("univariate solve") {
  const SquareSystem g({P("(1)*x0^2 + (-2)", 1)});
  const SolveReport rep = solve_total_degree(g, {}, 1);
  REQUIRE(rep.solutions.size() == 2);
  const auto re = sorted_real_parts(rep.solutions);
  CHECK(re[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(re[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("two variables with solutions at infinity") {
  // x*y = 1, x + y = 3: two finite solutions out of Bezout number 2.
  const SquareSystem g({P("(1)*x0*x1 + (-1)", 2), P("(1)*x0 + (1)*x1 + (-3)", 2)});
  const SolveReport rep = solve_total_degree(g, {}, 3);
  CHECK(rep.solutions.size() == 2);
  for (const auto& s : rep.solutions) CHECK(std::abs(s[0] * s[1] - 1.0) < 1e-10);
}

TEST_CASE("threads give the same endpoints") {
  const SquareSystem g({P("(1)*x0^3 + (-1)*x1 + (2)", 2), P("(1)*x1^2 + (1)*x0 + (-1)", 2)});
  TrackSettings one, four;
  four.threads = 4;
  const SolveReport a = solve_total_degree(g, one, 9), b = solve_total_degree(g, four, 9);
  REQUIRE(a.paths.size() == b.paths.size());
  for (std::size_t k = 0; k < a.paths.size(); ++k) {
    CHECK(a.paths[k].status == b.paths[k].status);
    CHECK(a.paths[k].endpoint == b.paths[k].endpoint);
  }
}

TEST_CASE("newton refinement") {
  const FloatSystem s(std::vector<SparsePoly>{P("(1)*x0^2 + (-2)", 1)}, 1);
  const auto r = newton_refine(s, {1.5});
  REQUIRE(r);
  CHECK(r->x[0].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(newton_refine(s, {0.0}));
}

TEST_CASE("loop around the discriminant of x^2 - c swaps the roots") {
  // c runs around the triangle 1 -> -1+i -> -1-i -> 1, which winds once around 0.
  const FloatSystem f0(std::vector<SparsePoly>{P("(1)*x0^2 + (-1)", 1)}, 1);
  const FloatSystem f1(std::vector<SparsePoly>{P("(1)*x0^2 + (1-i)", 1)}, 1);
  const FloatSystem f2(std::vector<SparsePoly>{P("(1)*x0^2 + (1+i)", 1)}, 1);
  const std::vector<FloatPoint> fiber{{1.0}, {-1.0}};
  const auto out = track_parameter_path({&f0, &f1, &f2}, fiber, {});
  REQUIRE(out);
  CHECK(std::abs((*out)[0][0] - (-1.0)) < 1e-8);
  CHECK(std::abs((*out)[1][0] - 1.0) < 1e-8);

  // A triangle avoiding 0 gives the identity.
  const FloatSystem g1(std::vector<SparsePoly>{P("(1)*x0^2 + (-2-i)", 1)}, 1);
  const FloatSystem g2(std::vector<SparsePoly>{P("(1)*x0^2 + (-2+i)", 1)}, 1);
  const auto same = track_parameter_path({&f0, &g1, &g2}, fiber, {});
  REQUIRE(same);
  CHECK(std::abs((*same)[0][0] - 1.0) < 1e-8);
  CHECK(std::abs((*same)[1][0] - (-1.0)) < 1e-8);
}

TEST_CASE("paths into a double root are truncated") {
  // (x - 1)^2 (x + 2): the double root at 1 is excluded, the simple root kept.
  const SquareSystem g({P("(1)*x0^3 + (-3)*x0 + (2)", 1)});
  const FloatPoint exclude{1.0};
  const SolveReport rep = solve_total_degree(g, {}, 2, &exclude);
  REQUIRE(rep.solutions.size() == 1);
  CHECK(std::abs(rep.solutions[0][0] + 2.0) < 1e-10);
  CHECK(rep.truncated + rep.failed == 2);
}
