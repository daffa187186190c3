#include "skewrank/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace skewrank {

// ---------------------------------------------------------------- Matrix

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, size_t cols) {
  Matrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ContractViolation("row length mismatch");
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::row(size_t i) const {
  return Vec(data_.begin() + static_cast<long>(i * cols_),
             data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vec Matrix::col(size_t j) const {
  Vec v(rows_);
  for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::all_rational() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_rational(); });
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ContractViolation("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Vec operator*(const Matrix& a, const Vec& x) {
  if (a.cols() != x.size()) throw ContractViolation("matrix-vector shape mismatch");
  Vec y(a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k)
      if (!a(i, k).is_zero() && !x[k].is_zero()) y[i] += a(i, k) * x[k];
  return y;
}

// ---------------------------------------------------------------- elimination

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

// Scales each row by the lcm of its denominators.
ZMat integer_rows(const Matrix& m) {
  ZMat z(m.rows(), std::vector<mpz_class>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (size_t j = 0; j < m.cols(); ++j) {
      const mpz_class& d = m(i, j).a().get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).a();
      if (sgn(q) == 0) continue;
      z[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  return z;
}

// Fraction-free Gauss-Jordan: every intermediate entry is a minor of the input,
// so the divisions by the previous pivot are exact. At the end every pivot
// equals the last pivot value and RREF = A / last pivot.
Rref rref_rational(const Matrix& m) {
  const size_t r = m.rows(), c = m.cols();
  ZMat a = integer_rows(m);
  mpz_class prev = 1, t;
  std::vector<size_t> pivots;
  size_t rk = 0;
  for (size_t col = 0; col < c && rk < r; ++col) {
    size_t piv = r;
    for (size_t i = rk; i < r; ++i)
      if (sgn(a[i][col]) != 0) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    std::swap(a[piv], a[rk]);
    const mpz_class p = a[rk][col];
    for (size_t i = 0; i < r; ++i) {
      if (i == rk) continue;
      const mpz_class f = a[i][col];
      std::vector<mpz_class>& row = a[i];
      const std::vector<mpz_class>& prow = a[rk];
      if (sgn(f) == 0) {
        if (p == prev) continue;
        for (size_t j = 0; j < c; ++j) {
          if (sgn(row[j]) == 0) continue;
          row[j] *= p;
          mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      for (size_t j = 0; j < c; ++j) {
        // row[j] = (p*row[j] - f*prow[j]) / prev
        mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), p.get_mpz_t());
        if (sgn(prow[j]) != 0) {
          mpz_mul(t.get_mpz_t(), f.get_mpz_t(), prow[j].get_mpz_t());
          mpz_sub(row[j].get_mpz_t(), row[j].get_mpz_t(), t.get_mpz_t());
        }
        if (prev != 1) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = p;
    pivots.push_back(col);
    ++rk;
  }
  Rref out{Matrix(r, c), pivots};
  for (size_t i = 0; i < rk; ++i)
    for (size_t j = 0; j < c; ++j) {
      if (sgn(a[i][j]) == 0) continue;
      mpq_class q(a[i][j], prev);
      q.canonicalize();
      out.reduced(i, j) = Scalar(q);
    }
  return out;
}

Rref rref_field(const Matrix& m) {
  const size_t r = m.rows(), c = m.cols();
  Matrix a = m;
  std::vector<size_t> pivots;
  size_t rk = 0;
  for (size_t col = 0; col < c && rk < r; ++col) {
    size_t piv = r;
    for (size_t i = rk; i < r; ++i)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    if (piv != rk)
      for (size_t j = 0; j < c; ++j) std::swap(a(piv, j), a(rk, j));
    Scalar inv = a(rk, col).inverse();
    for (size_t j = col; j < c; ++j) a(rk, j) *= inv;
    for (size_t i = 0; i < r; ++i) {
      if (i == rk || a(i, col).is_zero()) continue;
      Scalar f = a(i, col);
      for (size_t j = col; j < c; ++j)
        if (!a(rk, j).is_zero()) a(i, j) -= f * a(rk, j);
    }
    pivots.push_back(col);
    ++rk;
  }
  return {a, pivots};
}

// Forward-only Bareiss; returns rank and (for square input) the determinant of
// the integer-scaled matrix with the swap sign applied.
size_t bareiss_forward(ZMat& a, size_t c, mpz_class* det) {
  const size_t r = a.size();
  mpz_class prev = 1, t;
  size_t rk = 0;
  int sign = 1;
  for (size_t col = 0; col < c && rk < r; ++col) {
    size_t piv = r;
    for (size_t i = rk; i < r; ++i)
      if (sgn(a[i][col]) != 0) {
        piv = i;
        break;
      }
    if (piv == r) {
      if (det) {
        *det = 0;
        return rk;
      }
      continue;
    }
    if (piv != rk) {
      std::swap(a[piv], a[rk]);
      sign = -sign;
    }
    const mpz_class p = a[rk][col];
    for (size_t i = rk + 1; i < r; ++i) {
      const mpz_class f = a[i][col];
      for (size_t j = col; j < c; ++j) {
        mpz_mul(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), p.get_mpz_t());
        if (sgn(f) != 0 && sgn(a[rk][j]) != 0) {
          mpz_mul(t.get_mpz_t(), f.get_mpz_t(), a[rk][j].get_mpz_t());
          mpz_sub(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), t.get_mpz_t());
        }
        if (prev != 1) mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = p;
    ++rk;
  }
  if (det) *det = sign * prev;
  return rk;
}

}  // namespace

Rref rref(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {m, {}};
  return m.all_rational() ? rref_rational(m) : rref_field(m);
}

size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (!m.all_rational()) return rref_field(m).rank();
  ZMat a = integer_rows(m);
  return bareiss_forward(a, m.cols(), nullptr);
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("determinant of a non-square matrix");
  const size_t n = m.rows();
  if (n == 0) return Scalar(1);
  if (!m.all_rational()) {
    Matrix a = m;
    Scalar det = 1;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = n;
      for (size_t i = col; i < n; ++i)
        if (!a(i, col).is_zero()) {
          piv = i;
          break;
        }
      if (piv == n) return Scalar();
      if (piv != col) {
        for (size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
        det = -det;
      }
      det *= a(col, col);
      Scalar inv = a(col, col).inverse();
      for (size_t i = col + 1; i < n; ++i) {
        if (a(i, col).is_zero()) continue;
        Scalar f = a(i, col) * inv;
        for (size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      }
    }
    return det;
  }
  // det(m) = det(scaled) / prod(row scale factors)
  ZMat a = integer_rows(m);
  mpq_class scale = 1;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (sgn(m(i, j).a()) != 0) {
        scale *= mpq_class(a[i][j]) / m(i, j).a();
        break;
      }
    }
  }
  mpz_class d;
  bareiss_forward(a, n, &d);
  mpq_class q = mpq_class(d) / scale;
  q.canonicalize();
  return Scalar(q);
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::row_space(const Matrix& m) {
  Subspace s;
  s.ambient_ = m.cols();
  Rref r = rref(m);
  s.basis_ = Matrix(r.rank(), m.cols());
  for (size_t i = 0; i < r.rank(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) s.basis_(i, j) = r.reduced(i, j);
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& vectors, size_t ambient) {
  if (vectors.empty()) return Subspace(ambient);
  return row_space(Matrix::from_rows(vectors, ambient));
}

Subspace Subspace::full(size_t ambient) { return row_space(Matrix::identity(ambient)); }

std::vector<Vec> Subspace::vectors() const {
  std::vector<Vec> out;
  for (size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
  return out;
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec c(dim());
  for (size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) throw ContractViolation("ambient mismatch");
  Vec r = v;
  for (size_t i = 0; i < dim(); ++i) {
    Scalar f = r[pivots_[i]];
    if (f.is_zero()) continue;
    for (size_t j = 0; j < ambient_; ++j)
      if (!basis_(i, j).is_zero()) r[j] -= f * basis_(i, j);
  }
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
  for (size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.vector(i))) return false;
  return true;
}

Subspace kernel(const Matrix& m) {
  const size_t c = m.cols();
  Rref r = rref(m);
  std::vector<bool> is_pivot(c, false);
  for (size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (size_t f = 0; f < c; ++f) {
    if (is_pivot[f]) continue;
    Vec x(c);
    x[f] = 1;
    for (size_t i = 0; i < r.rank(); ++i) x[r.pivots[i]] = -r.reduced(i, f);
    vecs.push_back(std::move(x));
  }
  return Subspace::span(vecs, c);
}

Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

Subspace perp(const Subspace& a) {
  if (a.dim() == 0) return Subspace::full(a.ambient());
  return kernel(a.basis());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw ContractViolation("ambient mismatch in intersect");
  std::vector<Vec> rows = perp(a).vectors();
  for (auto& v : perp(b).vectors()) rows.push_back(v);
  if (rows.empty()) return Subspace::full(a.ambient());
  return kernel(Matrix::from_rows(rows, a.ambient()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw ContractViolation("ambient mismatch in sum");
  std::vector<Vec> rows = a.vectors();
  for (auto& v : b.vectors()) rows.push_back(v);
  return Subspace::span(rows, a.ambient());
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw ContractViolation("rhs length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (size_t i = 0; i < r.rank(); ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

std::vector<Vec> complement_basis(const Subspace& a) {
  std::vector<bool> used(a.ambient(), false);
  for (size_t p : a.pivots()) used[p] = true;
  std::vector<Vec> out;
  for (size_t j = 0; j < a.ambient(); ++j) {
    if (used[j]) continue;
    Vec e(a.ambient());
    e[j] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------- GF(p)

const std::vector<uint32_t>& mirror_primes() {
  static const std::vector<uint32_t> primes = {101, 103, 107, 109, 113, 127, 131, 137,
                                               139, 149, 151, 157, 163, 167, 173, 179};
  return primes;
}

uint32_t reduce_mod(const mpq_class& q, uint32_t p) {
  unsigned long den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
  if (den == 0) throw BadPrime("denominator divisible by " + std::to_string(p));
  unsigned long num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
  mpz_class inv, dd = den, pp = p;
  mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), pp.get_mpz_t());
  return static_cast<uint32_t>((static_cast<uint64_t>(num) * inv.get_ui()) % p);
}

ModMatrix modp_mirror(const Matrix& m, uint32_t p) {
  if (!m.all_rational()) throw BadPrime("modular mirror needs rational entries");
  ModMatrix r{p, m.rows(), m.cols(), std::vector<uint32_t>(m.rows() * m.cols())};
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_mod(m(i, j).a(), p);
  return r;
}

namespace {
uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}
}  // namespace

size_t rank_mod(ModMatrix m) {
  const uint64_t p = m.p;
  size_t rk = 0;
  for (size_t col = 0; col < m.cols && rk < m.rows; ++col) {
    size_t piv = m.rows;
    for (size_t i = rk; i < m.rows; ++i)
      if (m(i, col)) {
        piv = i;
        break;
      }
    if (piv == m.rows) continue;
    if (piv != rk)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rk, j));
    uint64_t inv = powmod(m(rk, col), p - 2, p);
    for (size_t i = rk + 1; i < m.rows; ++i) {
      if (!m(i, col)) continue;
      uint64_t f = m(i, col) * inv % p;
      for (size_t j = col; j < m.cols; ++j)
        m(i, j) = static_cast<uint32_t>((m(i, j) + (p - f) * m(rk, j)) % p);
    }
    ++rk;
  }
  return rk;
}

mpq_class rational_reconstruct(const mpz_class& residue, const mpz_class& modulus) {
  // Half-extended Euclid: stop at the first remainder below sqrt(M/2).
  mpz_class bound;
  mpz_class half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) throw ReconstructionFailure("no small rational fits");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) throw ReconstructionFailure("denominator shares a factor with the modulus");
  mpq_class q(r1, t1);
  q.canonicalize();
  return q;
}

mpq_class rational_reconstruct(const std::vector<uint32_t>& residues,
                               const std::vector<uint32_t>& primes) {
  if (residues.size() != primes.size() || primes.empty())
    throw ContractViolation("residue/prime count mismatch");
  mpz_class x = residues[0] % primes[0], m = primes[0];
  for (size_t i = 1; i < primes.size(); ++i) {
    mpz_class p = primes[i], inv;
    mpz_class mp = m % p;
    if (mpz_invert(inv.get_mpz_t(), mp.get_mpz_t(), p.get_mpz_t()) == 0)
      throw ContractViolation("moduli are not coprime");
    mpz_class diff = (mpz_class(residues[i]) - x) % p;
    if (diff < 0) diff += p;
    mpz_class k = diff * inv % p;
    x += m * k;
    m *= p;
  }
  mpq_class q = rational_reconstruct(x, m);
  for (size_t i = 0; i < primes.size(); ++i)
    if (reduce_mod(q, primes[i]) != residues[i] % primes[i])
      throw ReconstructionFailure("reconstruction inconsistent with residues");
  return q;
}

// ---------------------------------------------------------------- polynomials

void poly_trim(Poly& f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

int poly_degree(const Poly& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (sgn(f[i]) != 0) return static_cast<int>(i);
  return -1;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  int db = poly_degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  r = a;
  poly_trim(r);
  int da = poly_degree(r);
  q.assign(da >= db ? static_cast<size_t>(da - db + 1) : 0, mpq_class(0));
  while ((da = poly_degree(r)) >= db) {
    mpq_class c = r[static_cast<size_t>(da)] / b[static_cast<size_t>(db)];
    size_t shift = static_cast<size_t>(da - db);
    q[shift] = c;
    for (int i = 0; i <= db; ++i) r[shift + static_cast<size_t>(i)] -= c * b[static_cast<size_t>(i)];
    poly_trim(r);
  }
  poly_trim(q);
}

Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  mpq_class lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

Poly poly_derivative(const Poly& f) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * static_cast<long>(i);
  poly_trim(d);
  return d;
}

Poly poly_squarefree(const Poly& f) {
  Poly g = poly_gcd(f, poly_derivative(f));
  Poly q, r;
  poly_divmod(f, g.empty() ? Poly{1} : g, q, r);
  if (!q.empty()) {
    mpq_class lc = q.back();
    for (auto& c : q) c /= lc;
  }
  return q;
}

mpq_class poly_eval(const Poly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

Poly interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys) {
  const size_t n = xs.size();
  if (ys.size() != n) throw ContractViolation("interpolation size mismatch");
  // Newton divided differences, then expand.
  std::vector<mpq_class> c = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  Poly p{c[n - 1]};
  for (size_t k = n - 1; k-- > 0;) {
    // p = p * (s - xs[k]) + c[k]
    Poly np(p.size() + 1);
    for (size_t i = 0; i < p.size(); ++i) {
      np[i + 1] += p[i];
      np[i] -= p[i] * xs[k];
    }
    np[0] += c[k];
    p = std::move(np);
  }
  poly_trim(p);
  return p;
}

Poly charpoly(const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("charpoly of a non-square matrix");
  if (!m.all_rational()) throw ContractViolation("charpoly needs a rational matrix");
  const size_t n = m.rows();
  // Faddeev-LeVerrier.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n)), mk(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = m(i, j).a();
  Poly c(n + 1);
  c[n] = 1;
  for (size_t k = 1; k <= n; ++k) {
    // mk = a * mk_prev + c[n-k+1] I
    std::vector<std::vector<mpq_class>> next(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (size_t l = 0; l < n; ++l) s += a[i][l] * mk[l][j];
        next[i][j] = s;
      }
    for (size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    mpq_class tr = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) tr += a[i][l] * mk[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

std::vector<std::complex<double>> complex_roots(const Poly& f) {
  Poly g = f;
  poly_trim(g);
  int d = poly_degree(g);
  if (d < 1) return {};
  std::vector<long double> coef(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    mpq_class q = g[static_cast<size_t>(i)] / g[static_cast<size_t>(d)];
    coef[static_cast<size_t>(i)] = static_cast<long double>(q.get_d());
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -static_cast<double>(coef[static_cast<size_t>(i)]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < d; ++i) {
    std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 50; ++it) {
      std::complex<long double> p = 0, dp = 0;
      for (int k = d; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + coef[static_cast<size_t>(k)];
      }
      if (std::abs(dp) == 0) break;
      std::complex<long double> step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-18L * (1 + std::abs(z))) break;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

std::vector<mpq_class> rational_roots(const Poly& f) {
  Poly g = poly_squarefree(f);
  std::vector<mpq_class> out;
  if (poly_degree(g) < 1) return out;
  // Integer primitive form: rational roots p/q have q | leading coefficient.
  mpz_class l = 1;
  for (auto& c : g) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> z(g.size());
  for (size_t i = 0; i < g.size(); ++i) z[i] = mpq_class(g[i] * l).get_num();
  mpz_class lead = abs(z.back());
  auto push = [&](const mpq_class& r) {
    if (sgn(poly_eval(g, r)) == 0 && std::find(out.begin(), out.end(), r) == out.end())
      out.push_back(r);
  };
  if (sgn(g[0]) == 0) push(mpq_class(0));
  const mp_bitcnt_t prec = 64 + 4 * mpz_sizeinbase(lead.get_mpz_t(), 2) + 256;
  for (const auto& z0 : complex_roots(g)) {
    if (std::abs(z0.imag()) > 1e-6 * (1 + std::abs(z0.real()))) continue;
    // Newton in high precision on the exact coefficients.
    mpf_class x(z0.real(), prec);
    for (int it = 0; it < 200; ++it) {
      mpf_class p(0, prec), dp(0, prec);
      for (size_t k = g.size(); k-- > 0;) {
        dp = dp * x + p;
        p = p * x + mpf_class(g[k], prec);
      }
      if (sgn(dp) == 0) break;
      mpf_class step(p / dp, prec);
      x -= step;
      if (sgn(step) == 0) break;
      mpf_class ax = abs(x) + 1;
      mpf_class rel = abs(step) / ax;
      if (rel < mpf_class(std::ldexp(1.0, -static_cast<int>(std::min<mp_bitcnt_t>(prec, 1000))), prec))
        break;
    }
    // Continued fraction convergents with denominators up to |lead|.
    mpf_class y(x, prec);
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 4000; ++it) {
      mpf_class fl = floor(y);
      mpz_class a(fl);
      mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
      if (abs(k2) > lead) break;
      h0 = h1;
      h1 = h2;
      k0 = k1;
      k1 = k2;
      mpq_class cand(h1, k1);
      cand.canonicalize();
      push(cand);
      mpf_class frac = y - fl;
      if (sgn(frac) == 0) break;
      y = 1 / frac;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Scalar> quadratic_roots(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  if (sgn(a) == 0) {
    if (sgn(b) == 0) return {};
    return {Scalar(mpq_class(-c / b))};
  }
  mpq_class disc = b * b - 4 * a * c;
  if (sgn(disc) == 0) return {Scalar(mpq_class(-b / (2 * a)))};
  Scalar s = Scalar::sqrt_of(disc);
  Scalar two_a(mpq_class(2 * a));
  return {(Scalar(mpq_class(-b)) + s) / two_a, (Scalar(mpq_class(-b)) - s) / two_a};
}

}  // namespace skewrank

namespace skewrank {

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("inverse of a non-square matrix");
  const size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Rref r = rref(aug);
  if (r.rank() < n || r.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = r.reduced(i, n + j);
  return out;
}

}  // namespace skewrank
