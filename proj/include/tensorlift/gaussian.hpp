#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>

#include "tensorlift/error.hpp"

namespace tensorlift {

/// A Gaussian rational: complex number with exact rational real and imaginary
/// parts. All arithmetic is exact; i*i folds to -1.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational integer(long n) { return GaussianRational(n); }
  static GaussianRational rational(long num, long den) {
    if (den == 0) throw Error("rational constant with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q, 0);
  }
  static GaussianRational imaginary() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  /// True when the value is a (real) integer.
  bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }
  long to_long() const { return static_cast<long>(re_.get_num().get_si()); }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2 as an exact rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  GaussianRational inverse() const {
    mpq_class n = norm();
    if (n == 0) throw Error("division by zero");
    return {re_ / n, -im_ / n};
  }

  GaussianRational pow(long e) const {
    GaussianRational base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    GaussianRational acc(1);
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
  /// Total order (lexicographic on (re, im)), used only for deterministic
  /// canonical-form output; not meaningful as a complex ordering.
  std::strong_ordering operator<=>(const GaussianRational& o) const {
    int c = cmp(re_, o.re_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    c = cmp(im_, o.im_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Compact deterministic rendering, parseable by the expression grammar:
  /// "3", "-1/2", "i", "-i", "2*i", "(1+2*i)", "(1/2-i)".
  std::string str() const {
    auto q = [](const mpq_class& v) { return v.get_str(); };
    if (im_ == 0) return q(re_);
    std::string imag;
    mpq_class ai = abs(im_);
    if (ai == 1) {
      imag = "i";
    } else {
      imag = q(ai) + "*i";
    }
    if (re_ == 0) return (im_ < 0 ? "-" : "") + imag;
    return "(" + q(re_) + (im_ < 0 ? "-" : "+") + imag + ")";
  }

 private:
  mpq_class re_, im_;
};

/// Exact binomial coefficient as a GaussianRational.
inline GaussianRational binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return GaussianRational(mpq_class(r), 0);
}

}  // namespace tensorlift
