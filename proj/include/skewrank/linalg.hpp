// Exact dense linear algebra over Q, Q(sqrt D) and GF(p).
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "skewrank/scalar.hpp"

namespace skewrank {

using Vec = std::vector<Scalar>;

class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of exact scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  Vec row(size_t i) const;
  Vec col(size_t j) const;
  Matrix transpose() const;
  bool all_rational() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  const std::vector<Scalar>& data() const { return data_; }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, const Vec& x);

struct Rref {
  Matrix reduced;               // same shape as the input; rows past rank are zero
  std::vector<size_t> pivots;  // pivot column of each nonzero row
  size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. All-rational inputs use fraction-free
/// Gauss-Jordan elimination on integers (Bareiss-style exact divisions);
/// quadratic-field inputs use ordinary Gauss-Jordan in Q(sqrt D).
Rref rref(const Matrix& m);
size_t rank(const Matrix& m);
/// Determinant of a square matrix (fraction-free for rational input).
Scalar determinant(const Matrix& m);
/// Inverse of a square matrix; throws std::domain_error when singular.
Matrix inverse(const Matrix& m);

/// A linear subspace of K^n held in canonical reduced row echelon form, so
/// equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static Subspace span(const std::vector<Vec>& vectors, size_t ambient);
  static Subspace row_space(const Matrix& m);
  static Subspace full(size_t ambient);

  size_t ambient() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec vector(size_t i) const { return basis_.row(i); }
  std::vector<Vec> vectors() const;
  const std::vector<size_t>& pivots() const { return pivots_; }
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the echelon basis (v must lie in the subspace).
  Vec coordinates(const Vec& v) const;
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  size_t ambient_ = 0;
  Matrix basis_;
  std::vector<size_t> pivots_;
};

Subspace kernel(const Matrix& m);  // {x : m x = 0}, ambient = cols
Subspace image(const Matrix& m);   // column space, ambient = rows
Subspace perp(const Subspace& a);  // annihilator under the coordinate dot product
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// Particular solution of m x = b with all free variables zero, if consistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
/// Completes the rows of `a` to a basis of the ambient space with standard
/// basis vectors; returns only the added vectors.
std::vector<Vec> complement_basis(const Subspace& a);

// ---------------------------------------------------------------- GF(p)

class BadPrime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ReconstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed prime list used for modular mirrors (starts at 101).
const std::vector<uint32_t>& mirror_primes();

struct ModMatrix {
  uint32_t p = 0;
  size_t rows = 0, cols = 0;
  std::vector<uint32_t> data;
  uint32_t& operator()(size_t i, size_t j) { return data[i * cols + j]; }
  uint32_t operator()(size_t i, size_t j) const { return data[i * cols + j]; }
};

uint32_t reduce_mod(const mpq_class& q, uint32_t p);  // throws BadPrime
ModMatrix modp_mirror(const Matrix& m, uint32_t p);
size_t rank_mod(ModMatrix m);
/// Rational with |num|, den <= sqrt(M/2) congruent to the CRT lift of the
/// residues, verified to be consistent with every residue.
mpq_class rational_reconstruct(const std::vector<uint32_t>& residues,
                               const std::vector<uint32_t>& primes);
mpq_class rational_reconstruct(const mpz_class& residue, const mpz_class& modulus);

// ---------------------------------------------------------------- polynomials over Q

/// Dense univariate polynomial, coefficient i multiplies s^i.
using Poly = std::vector<mpq_class>;

void poly_trim(Poly& f);
int poly_degree(const Poly& f);  // -1 for the zero polynomial
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_derivative(const Poly& f);
Poly poly_squarefree(const Poly& f);  // f / gcd(f, f'), monic
mpq_class poly_eval(const Poly& f, const mpq_class& x);
Poly interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys);
/// Characteristic polynomial det(x I - M) of a square rational matrix.
Poly charpoly(const Matrix& m);
/// All distinct rational roots (numerical isolation, high-precision refinement,
/// continued-fraction candidates, exact verification).
std::vector<mpq_class> rational_roots(const Poly& f);
/// Roots of a x^2 + b x + c over Q(sqrt disc).
std::vector<Scalar> quadratic_roots(const mpq_class& a, const mpq_class& b, const mpq_class& c);
/// Complex roots of a square-free polynomial (companion matrix + Newton polish).
std::vector<std::complex<double>> complex_roots(const Poly& f);

}  // namespace skewrank
