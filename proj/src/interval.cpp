#include "fano/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace fano {

RealInterval::RealInterval(double lower, double upper) : lo(lower), hi(upper) {
  if (!(lo <= hi)) throw std::invalid_argument("interval with lo > hi");
}

RealInterval RealInterval::enclose(const Rational& q) {
  double d = q.get_d();  // truncates toward zero
  if (Rational(d) == q) return RealInterval(d);
  return {round_down(d), round_up(d)};
}

bool RealInterval::contains(const Rational& q) const {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    bool above = std::isinf(lo) ? lo < 0 : Rational(lo) <= q;
    bool below = std::isinf(hi) ? hi > 0 : q <= Rational(hi);
    return above && below;
  }
  // mpq_class(double) is exact for finite doubles.
  return Rational(lo) <= q && q <= Rational(hi);
}

RealInterval RealInterval::hull(const RealInterval& o) const { return {std::min(lo, o.lo), std::max(hi, o.hi)}; }

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  RealInterval out;
  out.lo = round_down(a.lo + b.lo);
  out.hi = round_up(a.hi + b.hi);
  return out;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  RealInterval out;
  out.lo = round_down(a.lo - b.hi);
  out.hi = round_up(a.hi - b.lo);
  return out;
}

RealInterval operator-(const RealInterval& a) {
  RealInterval out;
  out.lo = -a.hi;
  out.hi = -a.lo;
  return out;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  // Degenerate zero operands are common (real coefficients); keep them exact.
  if ((a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0)) return RealInterval(0.0);
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  RealInterval out;
  out.lo = round_down(std::min({p1, p2, p3, p4}));
  out.hi = round_up(std::max({p1, p2, p3, p4}));
  return out;
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) { return {a.re + b.re, a.im + b.im}; }
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) { return {a.re - b.re, a.im - b.im}; }
ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBox ComplexBox::around(std::span<const std::complex<double>> center, double radius) {
  std::vector<ComplexInterval> coords;
  coords.reserve(center.size());
  for (const auto& z : center) {
    RealInterval re{round_down(z.real() - radius), round_up(z.real() + radius)};
    RealInterval im{round_down(z.imag() - radius), round_up(z.imag() + radius)};
    coords.emplace_back(re, im);
  }
  return ComplexBox(std::move(coords));
}

ComplexBox ComplexBox::point(std::span<const std::complex<double>> center) {
  std::vector<ComplexInterval> coords(center.begin(), center.end());
  return ComplexBox(std::move(coords));
}

std::vector<std::complex<double>> ComplexBox::midpoint() const {
  std::vector<std::complex<double>> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.mid());
  return out;
}

double ComplexBox::max_width() const {
  double w = 0.0;
  for (const auto& c : coords_) w = std::max(w, c.width());
  return w;
}

bool ComplexBox::contains(std::span<const std::complex<double>> z) const {
  if (z.size() != coords_.size()) return false;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (!coords_[k].contains(z[k])) return false;
  return true;
}

bool ComplexBox::contains(const ComplexBox& o) const {
  if (o.dim() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (!coords_[k].contains(o.coords_[k])) return false;
  return true;
}

bool ComplexBox::interior_contains(const ComplexBox& o) const {
  if (o.dim() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (!coords_[k].interior_contains(o.coords_[k])) return false;
  return true;
}

bool ComplexBox::intersects(const ComplexBox& o) const {
  if (o.dim() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (!coords_[k].intersects(o.coords_[k])) return false;
  return true;
}

bool ComplexBox::contains(std::span<const GaussianRational> z) const {
  if (z.size() != coords_.size()) return false;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (!coords_[k].contains(z[k])) return false;
  return true;
}

std::string to_hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double from_hex(const std::string& text) {
  char* end = nullptr;
  double x = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw std::invalid_argument("bad hex float '" + text + "'");
  return x;
}

}  // namespace fano
