// Exact scalars: rationals, optionally extended to a quadratic field Q(sqrt D).
#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace skewrank {

/// Raised when two quadratic scalars from different fields meet, or when a
/// value cannot be represented in the requested field.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square-free decomposition n = s^2 * D with D square-free (sign kept in D).
/// Factors by trial division followed by a perfect-square test on the cofactor,
/// which is exact for every input whose cofactor has at most one repeated prime
/// above the trial bound (not an issue at the sizes this library produces).
mpz_class squarefree_part(const mpz_class& n, mpz_class* root_of_square = nullptr);

/// An element a + b*sqrt(D) of Q(sqrt D). Rational values have b = 0 and D = 1.
/// Arithmetic between a rational and a quadratic value adopts the quadratic
/// field; arithmetic between two quadratic values requires equal D.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : a_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(const mpz_class& v) : a_(v) {}  // NOLINT
  Scalar(const mpq_class& v) : a_(v) {}  // NOLINT
  Scalar(long num, long den);

  /// a + b*sqrt(D); D is reduced to its square-free part and the square factor
  /// moved into b. D = 1 (or b = 0) collapses to a rational.
  static Scalar quadratic(const mpq_class& a, const mpq_class& b, const mpz_class& D);

  /// Exact square root of a rational, landing in Q(sqrt D) for the square-free
  /// part D of q.
  static Scalar sqrt_of(const mpq_class& q);

  /// Square root inside the field Q(sqrt D) (D = 1 means inside Q), if it exists.
  static std::optional<Scalar> sqrt_in_field(const Scalar& x, const mpz_class& D);

  /// Parses "p", "p/q", "a+b√D", "a-b√D", "b√D", and the ASCII spelling
  /// "sqrt(D)" in place of "√D".
  static Scalar parse(const std::string& text);

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  const mpz_class& D() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return is_rational() && a_ == 1; }

  Scalar conj() const;
  mpq_class norm() const;  // a^2 - D b^2
  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;
  std::complex<double> to_complex() const;

 private:
  mpq_class a_{0};
  mpq_class b_{0};
  mpz_class d_{1};

  void normalize();
  // Common field of two operands; throws FieldError on mismatch.
  static const mpz_class& join(const Scalar& x, const Scalar& y);
};

/// Field tag D shared by a range of scalars (1 when all are rational).
template <class It>
mpz_class common_field(It first, It last) {
  mpz_class d = 1;
  for (; first != last; ++first) {
    if (first->is_rational()) continue;
    if (d == 1) {
      d = first->D();
    } else if (d != first->D()) {
      throw FieldError("scalars from different quadratic fields");
    }
  }
  return d;
}

}  // namespace skewrank
