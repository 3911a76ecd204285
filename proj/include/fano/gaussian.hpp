#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fano {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact element of Q(i). Both parts are GMP rationals, which GMP keeps
/// canonical (lowest terms, positive denominator) after every operation.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}
  // Canonicalizes, so Rational(num, den) built by hand is safe.
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  /// Throws std::domain_error for zero.
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical text "a/b+c/d*i" (denominators of 1 are omitted).
  std::string to_string() const;
  /// Accepts the canonical form; also plain rationals ("3/4") and pure
  /// imaginary values ("2*i", "-i"). Throws std::invalid_argument.
  static GaussianRational parse(std::string_view text);

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Total bit length of numerators and denominators; a cheap size measure
  /// used for pivot selection.
  std::size_t height() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

}  // namespace fano
