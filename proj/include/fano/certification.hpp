#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fano/compiled.hpp"
#include "fano/interval.hpp"
#include "fano/system_builder.hpp"

namespace fano {

using FloatPoint = std::vector<std::complex<double>>;
using FloatMatrix = Eigen::MatrixXcd;

// ---- exact double-zero check ----

struct DoubleZeroCertificate {
  ChartPoint point;
  TangentVector kernel_vector;
  bool zero_value = false;
  bool kernel_dim_one = false;
  bool hessian_escape = false;

  bool valid() const { return zero_value && kernel_dim_one && hessian_escape; }
};

enum class Rejection { NotAZero, KernelDimZero, KernelDimHigh, HessianInImage };

std::string to_string(Rejection r);

/// Exact check that x is a simple double zero of G: G(x) = 0, ker DG(x) is
/// spanned by one v, and D^2G(x)(v,v) is outside the image of DG(x).
std::variant<DoubleZeroCertificate, Rejection> is_simple_double_zero(const SquareSystem& g, const ChartPoint& x);

// ---- interval certification ----

/// G and DG over complex intervals, with coefficients enclosed from the
/// exact ones.
class IntervalSystem {
 public:
  explicit IntervalSystem(const SquareSystem& g);
  std::size_t num_vars() const { return polys_.num_vars(); }
  std::vector<ComplexInterval> evaluate(const ComplexBox& box) const;
  /// Row-major m x m enclosure of DG over the box.
  std::vector<ComplexInterval> jacobian(const ComplexBox& box) const;
  void evaluate(const ComplexBox& box, std::vector<ComplexInterval>& values, std::vector<ComplexInterval>* jac) const;

 private:
  CompiledPolys<ComplexInterval> polys_;
};

/// Interval enclosure of p over the box.
ComplexInterval interval_evaluate(const SparsePoly& p, const ComplexBox& box);

/// x - Y G(x) + (Id - Y DG(I)) (I - x) in outward-rounded arithmetic.
ComplexBox krawczyk(const IntervalSystem& g, const FloatPoint& x, const FloatMatrix& y, const ComplexBox& box);

/// Floating inverse of the midpoint Jacobian, the preconditioner used by
/// rump_certify and by verification. Deterministic in x.
std::optional<FloatMatrix> preconditioner(const IntervalSystem& g, const FloatPoint& x);

struct CertifiedBox {
  FloatPoint center;
  ComplexBox box;  // contains a unique zero of G; K(box) lies in its interior
};

/// Tries boxes of half-width max(1e-12 max(1, |x|), 8 |Newton step|),
/// growing by 8 up to five times, and accepts the first box I with K(I)
/// strictly inside I. nullopt means "could not certify", never a claim
/// that there is no zero.
std::optional<CertifiedBox> rump_certify(const IntervalSystem& g, const FloatPoint& x);

/// Re-check of a stored box: recomputes Y at the stored center and tests
/// K(I) against I again.
bool recheck_box(const IntervalSystem& g, const CertifiedBox& cb);

// ---- fibers ----

struct CertifiedFiber {
  std::optional<DoubleZeroCertificate> double_point;
  std::vector<CertifiedBox> boxes;
  Integer expected_degree;
  /// Candidates that could not be certified.
  std::size_t failed = 0;
};

enum class FiberStatus { Ok, CountMismatch, OverlapDetected, ExcludedPointHit };

std::string to_string(FiberStatus s);

struct FiberResult {
  FiberStatus status = FiberStatus::Ok;
  CertifiedFiber fiber;
  std::string detail;
};

/// Index pairs (i, j), i < j, of boxes that intersect. Sweep over the real
/// part of the first coordinate.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const std::vector<ComplexBox>& boxes);

/// Index of a box containing the exact point, if any.
std::optional<std::size_t> box_containing(const std::vector<ComplexBox>& boxes, const ChartPoint& x);

/// Certifies every candidate, then checks pairwise disjointness, exclusion
/// of the double point and the count deg - 2 (dz present) or deg.
FiberResult certify_fiber(const SquareSystem& g, const std::vector<FloatPoint>& candidates,
                          const std::optional<DoubleZeroCertificate>& dz, const Integer& expected_degree);

/// Same checks on boxes that were already certified.
FiberResult check_fiber(std::vector<CertifiedBox> boxes, const std::optional<DoubleZeroCertificate>& dz,
                        const Integer& expected_degree, std::size_t failed);

}  // namespace fano
