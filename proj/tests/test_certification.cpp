#include <cmath>

#include "doctest.h"
#include "fano/certification.hpp"
#include "fano/instance_forge.hpp"
#include "fano/tracker.hpp"

using namespace fano;

namespace {

SparsePoly P(const char* text, std::size_t nv) { return SparsePoly::parse(text, nv); }

const ChartPoint kOrigin{ExactVector(2)};

bool rejected_with(const SquareSystem& g, const ChartPoint& x, Rejection r) {
  auto res = is_simple_double_zero(g, x);
  return std::holds_alternative<Rejection>(res) && std::get<Rejection>(res) == r;
}

GaussianRational exact(std::complex<double> z) { return {Rational(z.real()), Rational(z.imag())}; }

}  // namespace

TEST_CASE("double zero verdicts on toy systems") {
  const SquareSystem valid({P("(1)*x0^2 + (-1)*x1", 2), P("(1)*x1", 2)});
  auto res = is_simple_double_zero(valid, kOrigin);
  REQUIRE(std::holds_alternative<DoubleZeroCertificate>(res));
  const auto& dz = std::get<DoubleZeroCertificate>(res);
  CHECK(dz.valid());
  CHECK(dz.kernel_vector.coords == ExactVector{1, 0});

  CHECK(rejected_with(SquareSystem({P("(1)*x0", 2), P("(1)*x1", 2)}), kOrigin, Rejection::KernelDimZero));
  CHECK(rejected_with(SquareSystem({P("(1)*x0^2", 2), P("(1)*x1^2", 2)}), kOrigin, Rejection::KernelDimHigh));
  CHECK(rejected_with(SquareSystem({P("(1)*x0^3", 2), P("(1)*x1", 2)}), kOrigin, Rejection::HessianInImage));
  CHECK(rejected_with(valid, ChartPoint{{1, 0}}, Rejection::NotAZero));
}

TEST_CASE("double zero verdict ignores the scale of the kernel vector") {
  // Kernel spanned by (2, 1); the verdict is the same for any multiple.
  const SquareSystem g({P("(1)*x0 + (-2)*x1 + (1)*x0^2", 2), P("(2)*x0 + (-4)*x1", 2)});
  auto res = is_simple_double_zero(g, kOrigin);
  REQUIRE(std::holds_alternative<DoubleZeroCertificate>(res));
  const ExactVector v = std::get<DoubleZeroCertificate>(res).kernel_vector.coords;
  const ExactMatrix j = jacobian_at(g, kOrigin);
  for (const GaussianRational& lambda : {GaussianRational(1), GaussianRational(-3), GaussianRational::i()}) {
    const ExactVector w{lambda * v[0], lambda * v[1]};
    CHECK(is_zero_vector(j * w));
    CHECK_FALSE(in_column_span(j, hessian_quadratic(g, kOrigin, TangentVector{w})));
  }
}

TEST_CASE("forged instances pass the exact double-zero check") {
  for (const auto& t : {FanoType(1, 4, {2, 2}), FanoType(1, 3, {3})}) {
    const SquareSystem g = build_square_system(constrained_form_system(t, default_ell(t), default_v(t), 1));
    auto res = is_simple_double_zero(g, default_ell(t));
    REQUIRE(std::holds_alternative<DoubleZeroCertificate>(res));
    CHECK(std::get<DoubleZeroCertificate>(res).valid());
  }
}

TEST_CASE("interval evaluation encloses exact values") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nv = static_cast<std::size_t>(rng.uniform_int(1, 3));
    SparsePoly p(nv);
    for (unsigned d = 0; d <= 3; ++d)
      for (const auto& m : monomials_of_degree(nv, d))
        if (rng.uniform_int(0, 1)) p.add_term(m, random_gaussian(rng));
    FloatPoint c(nv);
    for (auto& z : c) z = {4 * rng.uniform01() - 2, 4 * rng.uniform01() - 2};
    const ComplexBox box = ComplexBox::around(c, rng.uniform01());
    const ComplexInterval value = interval_evaluate(p, box);
    const ComplexBox outer = ComplexBox::around(c, 1.5);
    CHECK(interval_evaluate(p, outer).contains(value));
    for (int k = 0; k < 10; ++k) {
      ExactVector pt(nv);
      for (std::size_t i = 0; i < nv; ++i) {
        const auto& iv = box[i];
        pt[i] = exact({iv.re.lo + rng.uniform01() * iv.re.width(), iv.im.lo + rng.uniform01() * iv.im.width()});
      }
      CHECK(value.contains(p.evaluate(pt)));
    }
  }
}

TEST_CASE("krawczyk on x^2 - 1") {
  const SquareSystem g({P("(1)*x0^2 + (-1)", 1)});
  const IntervalSystem ig(g);
  FloatMatrix y(1, 1);
  y(0, 0) = 0.5;
  // I - y J(X) and X - c are both within 0.1 + 0.1i of 0, so K sits in 1 +- 0.02 (+- 0.02i).
  const ComplexBox box({ComplexInterval(RealInterval(0.9, 1.1), RealInterval(-0.1, 0.1))});
  const ComplexBox k = krawczyk(ig, {1.0}, y, box);
  CHECK(k[0].re.lo >= 0.98 - 1e-12);
  CHECK(k[0].re.hi <= 1.02 + 1e-12);
  CHECK(k[0].im.hi <= 0.02 + 1e-12);
  CHECK(box.interior_contains(k));
}

TEST_CASE("krawczyk is exact on linear systems") {
  const SquareSystem g({P("(1)*x0 + (-3)", 1)});
  const IntervalSystem ig(g);
  FloatMatrix y(1, 1);
  y(0, 0) = 1.0;
  const ComplexBox box({ComplexInterval(RealInterval(-5, 7), RealInterval(-1, 2))});
  const ComplexBox k = krawczyk(ig, {2.0}, y, box);
  CHECK(k[0].contains(std::complex<double>(3.0, 0.0)));
  CHECK(k[0].width() < 1e-12);
}

TEST_CASE("rump_certify") {
  const SquareSystem g({P("(1)*x0^2 + (-2)", 1)});
  const IntervalSystem ig(g);
  const auto cb = rump_certify(ig, {1.41421356237});
  REQUIRE(cb);
  CHECK(cb->box[0].contains(std::complex<double>(std::sqrt(2.0), 0.0)));
  CHECK(cb->box.max_width() < 1e-6);
  CHECK(recheck_box(ig, *cb));
  CHECK_FALSE(rump_certify(ig, {5.0}));

  const FanoType t(1, 4, {2, 2});
  const SquareSystem forged = build_square_system(constrained_form_system(t, default_ell(t), default_v(t), 1));
  CHECK_FALSE(rump_certify(IntervalSystem(forged), FloatPoint(6, 0.0)));
}

TEST_CASE("certify_fiber on a random (1,4,(2,2)) instance") {
  const FanoType t(1, 4, {2, 2});
  const SquareSystem g = build_square_system(random_form_system(t, 5));
  const SolveReport rep = solve_total_degree(g, {}, 5);
  const FiberResult res = certify_fiber(g, rep.solutions, std::nullopt, fano_degree(t));
  CHECK(res.status == FiberStatus::Ok);
  CHECK(res.fiber.boxes.size() == 16);

  std::vector<FloatPoint> doubled = rep.solutions;
  doubled.push_back(rep.solutions.front());
  CHECK(certify_fiber(g, doubled, std::nullopt, fano_degree(t)).status == FiberStatus::OverlapDetected);

  std::vector<FloatPoint> short_list(rep.solutions.begin(), rep.solutions.begin() + 10);
  CHECK(certify_fiber(g, short_list, std::nullopt, fano_degree(t)).status == FiberStatus::CountMismatch);
}

TEST_CASE("a box around the double point is caught") {
  const SquareSystem g({P("(1)*x0^2 + (-1)*x1", 2), P("(1)*x1", 2)});
  auto dz = std::get<DoubleZeroCertificate>(is_simple_double_zero(g, kOrigin));
  const FloatPoint zero(2, 0.0);
  std::vector<CertifiedBox> boxes{{zero, ComplexBox::around(zero, 1e-3)}};
  CHECK(check_fiber(boxes, dz, Integer(3), 0).status == FiberStatus::ExcludedPointHit);
}

TEST_CASE("hex floats round trip") {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const double x = (rng.uniform01() - 0.5) * std::pow(10.0, static_cast<double>(rng.uniform_int(-300, 300)));
    CHECK(from_hex(to_hex(x)) == x);
  }
  CHECK_THROWS_AS(from_hex("zz"), std::invalid_argument);
}
