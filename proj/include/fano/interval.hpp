#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fano/gaussian.hpp"

namespace fano {

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
///
/// Every operation computes its bounds in round-to-nearest and then steps
/// one ulp outward, so the result always encloses the exact set image.
/// The translation units doing interval work are built with
/// -ffp-contract=off so no fused operation skips a rounding.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;

  RealInterval() = default;
  RealInterval(double point) : lo(point), hi(point) {}
  RealInterval(double lower, double upper);

  /// Tight enclosure of an exact rational.
  static RealInterval enclose(const Rational& q);

  double mid() const { return lo + 0.5 * (hi - lo); }
  double width() const { return hi - lo; }
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const RealInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool interior_contains(const RealInterval& o) const { return lo < o.lo && o.hi < hi; }
  bool intersects(const RealInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  /// Exact comparison against a rational, never rounding q.
  bool contains(const Rational& q) const;

  RealInterval hull(const RealInterval& o) const;
};

inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

RealInterval operator+(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a);
RealInterval operator*(const RealInterval& a, const RealInterval& b);

/// Rectangular complex interval: independent real and imaginary ranges.
struct ComplexInterval {
  RealInterval re;
  RealInterval im;

  ComplexInterval() = default;
  ComplexInterval(const RealInterval& r, const RealInterval& i = RealInterval()) : re(r), im(i) {}
  ComplexInterval(double x) : re(x), im(0.0) {}
  ComplexInterval(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  static ComplexInterval enclose(const GaussianRational& z) {
    return {RealInterval::enclose(z.re()), RealInterval::enclose(z.im())};
  }

  std::complex<double> mid() const { return {re.mid(), im.mid()}; }
  double width() const { return std::max(re.width(), im.width()); }
  bool contains(std::complex<double> z) const { return re.contains(z.real()) && im.contains(z.imag()); }
  bool contains(const ComplexInterval& o) const { return re.contains(o.re) && im.contains(o.im); }
  bool interior_contains(const ComplexInterval& o) const {
    return re.interior_contains(o.re) && im.interior_contains(o.im);
  }
  bool intersects(const ComplexInterval& o) const { return re.intersects(o.re) && im.intersects(o.im); }
  bool contains(const GaussianRational& z) const { return re.contains(z.re()) && im.contains(z.im()); }
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);

/// Product of complex intervals, one per coordinate.
class ComplexBox {
 public:
  ComplexBox() = default;
  explicit ComplexBox(std::vector<ComplexInterval> coords) : coords_(std::move(coords)) {}
  /// Box of half-width `radius` (in both real and imaginary parts) around
  /// `center`, rounded outward.
  static ComplexBox around(std::span<const std::complex<double>> center, double radius);
  /// Degenerate box at a floating point.
  static ComplexBox point(std::span<const std::complex<double>> center);

  std::size_t dim() const { return coords_.size(); }
  const ComplexInterval& operator[](std::size_t k) const { return coords_[k]; }
  ComplexInterval& operator[](std::size_t k) { return coords_[k]; }
  const std::vector<ComplexInterval>& coords() const { return coords_; }

  std::vector<std::complex<double>> midpoint() const;
  double max_width() const;

  bool contains(std::span<const std::complex<double>> z) const;
  bool contains(const ComplexBox& o) const;
  bool interior_contains(const ComplexBox& o) const;
  bool intersects(const ComplexBox& o) const;
  /// Exact membership test for a Gaussian-rational point.
  bool contains(std::span<const GaussianRational> z) const;

 private:
  std::vector<ComplexInterval> coords_;
};

/// Hexadecimal float text ("0x1.8p+0"), which round-trips bit-exactly.
std::string to_hex(double x);
double from_hex(const std::string& text);

}  // namespace fano
