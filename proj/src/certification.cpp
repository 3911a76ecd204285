#include "fano/certification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fano {

std::string to_string(Rejection r) {
  switch (r) {
    case Rejection::NotAZero: return "NotAZero";
    case Rejection::KernelDimZero: return "KernelDimZero";
    case Rejection::KernelDimHigh: return "KernelDimHigh";
    case Rejection::HessianInImage: return "HessianInImage";
  }
  return "?";
}

std::string to_string(FiberStatus s) {
  switch (s) {
    case FiberStatus::Ok: return "Ok";
    case FiberStatus::CountMismatch: return "CountMismatch";
    case FiberStatus::OverlapDetected: return "OverlapDetected";
    case FiberStatus::ExcludedPointHit: return "ExcludedPointHit";
  }
  return "?";
}

std::variant<DoubleZeroCertificate, Rejection> is_simple_double_zero(const SquareSystem& g, const ChartPoint& x) {
  if (!is_zero_vector(g.evaluate(x.coords))) return Rejection::NotAZero;
  const ExactMatrix jac = g.jacobian_at(x.coords);
  const std::vector<ExactVector> kernel = kernel_basis(jac);
  if (kernel.empty()) return Rejection::KernelDimZero;
  if (kernel.size() > 1) return Rejection::KernelDimHigh;
  const ExactVector w = g.hessian_quadratic(x.coords, kernel[0]);
  if (in_column_span(jac, w)) return Rejection::HessianInImage;
  DoubleZeroCertificate cert;
  cert.point = x;
  cert.kernel_vector = TangentVector{kernel[0]};
  cert.zero_value = cert.kernel_dim_one = cert.hessian_escape = true;
  return cert;
}

IntervalSystem::IntervalSystem(const SquareSystem& g)
    : polys_(g.polys(), g.num_vars(), [](const GaussianRational& c) { return ComplexInterval::enclose(c); }) {}

void IntervalSystem::evaluate(const ComplexBox& box, std::vector<ComplexInterval>& values,
                              std::vector<ComplexInterval>* jac) const {
  const std::size_t m = num_vars();
  if (box.dim() != m) throw DimensionError("box has the wrong dimension");
  values.assign(polys_.num_polys(), ComplexInterval());
  if (jac) jac->assign(polys_.num_polys() * m, ComplexInterval());
  polys_.evaluate(box.coords().data(), values.data(), jac ? jac->data() : nullptr);
}

std::vector<ComplexInterval> IntervalSystem::evaluate(const ComplexBox& box) const {
  std::vector<ComplexInterval> values;
  evaluate(box, values, nullptr);
  return values;
}

std::vector<ComplexInterval> IntervalSystem::jacobian(const ComplexBox& box) const {
  std::vector<ComplexInterval> values, jac;
  evaluate(box, values, &jac);
  return jac;
}

ComplexInterval interval_evaluate(const SparsePoly& p, const ComplexBox& box) {
  CompiledPolys<ComplexInterval> c({p}, p.num_vars(),
                                   [](const GaussianRational& q) { return ComplexInterval::enclose(q); });
  ComplexInterval out;
  c.evaluate(box.coords().data(), &out, nullptr);
  return out;
}

ComplexBox krawczyk(const IntervalSystem& g, const FloatPoint& x, const FloatMatrix& y, const ComplexBox& box) {
  const std::size_t m = g.num_vars();
  if (x.size() != m || box.dim() != m || static_cast<std::size_t>(y.rows()) != m ||
      static_cast<std::size_t>(y.cols()) != m)
    throw DimensionError("krawczyk operands have inconsistent sizes");

  std::vector<ComplexInterval> gx;
  g.evaluate(ComplexBox::point(x), gx, nullptr);
  std::vector<ComplexInterval> values, dg;
  g.evaluate(box, values, &dg);

  std::vector<ComplexInterval> yi(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) yi[i * m + j] = ComplexInterval(y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));

  std::vector<ComplexInterval> diff(m);
  for (std::size_t k = 0; k < m; ++k) diff[k] = box[k] - ComplexInterval(x[k]);

  std::vector<ComplexInterval> out(m);
  std::vector<ComplexInterval> mrow(m);
  for (std::size_t i = 0; i < m; ++i) {
    ComplexInterval ygx(0.0);
    for (std::size_t j = 0; j < m; ++j) ygx = ygx + yi[i * m + j] * gx[j];
    // Row i of Id - Y DG(I).
    for (std::size_t k = 0; k < m; ++k) mrow[k] = ComplexInterval(i == k ? 1.0 : 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const ComplexInterval& yij = yi[i * m + j];
      for (std::size_t k = 0; k < m; ++k) mrow[k] = mrow[k] - yij * dg[j * m + k];
    }
    ComplexInterval acc = ComplexInterval(x[i]) - ygx;
    for (std::size_t k = 0; k < m; ++k) acc = acc + mrow[k] * diff[k];
    out[i] = acc;
  }
  return ComplexBox(std::move(out));
}

std::optional<FloatMatrix> preconditioner(const IntervalSystem& g, const FloatPoint& x) {
  const std::size_t m = g.num_vars();
  std::vector<ComplexInterval> values, jac;
  g.evaluate(ComplexBox::point(x), values, &jac);
  FloatMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jac[i * m + j].mid();
  Eigen::FullPivLU<FloatMatrix> lu(a);
  if (!lu.isInvertible()) return std::nullopt;
  FloatMatrix inv = lu.inverse();
  if (!inv.allFinite()) return std::nullopt;
  return inv;
}

namespace {

double max_abs(const FloatPoint& x) {
  double out = 0.0;
  for (const auto& z : x) out = std::max({out, std::fabs(z.real()), std::fabs(z.imag())});
  return out;
}

}  // namespace

std::optional<CertifiedBox> rump_certify(const IntervalSystem& g, const FloatPoint& x) {
  const std::size_t m = g.num_vars();
  if (x.size() != m) throw DimensionError("point has the wrong length");
  for (const auto& z : x)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
  auto y = preconditioner(g, x);
  if (!y) return std::nullopt;

  std::vector<ComplexInterval> gx;
  g.evaluate(ComplexBox::point(x), gx, nullptr);
  Eigen::VectorXcd gmid(m);
  for (std::size_t i = 0; i < m; ++i) gmid(static_cast<Eigen::Index>(i)) = gx[i].mid();
  const Eigen::VectorXcd step = (*y) * gmid;
  double step_norm = 0.0;
  for (Eigen::Index i = 0; i < step.size(); ++i)
    step_norm = std::max({step_norm, std::fabs(step(i).real()), std::fabs(step(i).imag())});
  if (!std::isfinite(step_norm)) return std::nullopt;

  double radius = std::max(1e-12 * std::max(1.0, max_abs(x)), 8.0 * step_norm);
  for (int attempt = 0; attempt <= 5; ++attempt, radius *= 8.0) {
    ComplexBox box = ComplexBox::around(x, radius);
    ComplexBox k = krawczyk(g, x, *y, box);
    if (box.interior_contains(k)) return CertifiedBox{x, std::move(box)};
  }
  return std::nullopt;
}

bool recheck_box(const IntervalSystem& g, const CertifiedBox& cb) {
  if (cb.center.size() != g.num_vars() || cb.box.dim() != g.num_vars()) return false;
  auto y = preconditioner(g, cb.center);
  if (!y) return false;
  return cb.box.interior_contains(krawczyk(g, cb.center, *y, cb.box));
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const std::vector<ComplexBox>& boxes) {
  std::vector<std::size_t> order(boxes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto lo = [&](std::size_t i) { return boxes[i].dim() ? boxes[i][0].re.lo : 0.0; };
  auto hi = [&](std::size_t i) { return boxes[i].dim() ? boxes[i][0].re.hi : 0.0; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo(a) < lo(b); });
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<std::size_t> active;
  for (std::size_t idx : order) {
    std::erase_if(active, [&](std::size_t a) { return hi(a) < lo(idx); });
    for (std::size_t a : active)
      if (boxes[a].intersects(boxes[idx])) out.emplace_back(std::min(a, idx), std::max(a, idx));
    active.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> box_containing(const std::vector<ComplexBox>& boxes, const ChartPoint& x) {
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (boxes[i].contains(std::span<const GaussianRational>(x.coords))) return i;
  return std::nullopt;
}

FiberResult check_fiber(std::vector<CertifiedBox> boxes, const std::optional<DoubleZeroCertificate>& dz,
                        const Integer& expected_degree, std::size_t failed) {
  FiberResult res;
  res.fiber.double_point = dz;
  res.fiber.expected_degree = expected_degree;
  res.fiber.failed = failed;
  res.fiber.boxes = std::move(boxes);
  std::vector<ComplexBox> plain;
  for (const auto& cb : res.fiber.boxes) plain.push_back(cb.box);

  if (auto pairs = overlapping_pairs(plain); !pairs.empty()) {
    res.status = FiberStatus::OverlapDetected;
    res.detail = std::to_string(pairs.size()) + " overlapping pairs, first (" + std::to_string(pairs[0].first) + "," +
                 std::to_string(pairs[0].second) + ")";
    return res;
  }
  if (dz) {
    if (auto hit = box_containing(plain, dz->point)) {
      res.status = FiberStatus::ExcludedPointHit;
      res.detail = "box " + std::to_string(*hit) + " contains the double point";
      return res;
    }
  }
  const Integer expected = expected_degree - (dz ? 2 : 0);
  if (Integer(static_cast<unsigned long>(plain.size())) != expected) {
    res.status = FiberStatus::CountMismatch;
    res.detail = "certified " + std::to_string(plain.size()) + " of " + expected.get_str() + " expected boxes";
    return res;
  }
  return res;
}

FiberResult certify_fiber(const SquareSystem& g, const std::vector<FloatPoint>& candidates,
                          const std::optional<DoubleZeroCertificate>& dz, const Integer& expected_degree) {
  const IntervalSystem ig(g);
  std::vector<CertifiedBox> boxes;
  std::size_t failed = 0;
  for (const auto& x : candidates) {
    if (auto cb = rump_certify(ig, x))
      boxes.push_back(std::move(*cb));
    else
      ++failed;
  }
  return check_fiber(std::move(boxes), dz, expected_degree, failed);
}

}  // namespace fano
