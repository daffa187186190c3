// Helpers shared by the atlas translation units (not installed).
#pragma once

#include <random>

#include "skewrank/atlas.hpp"

namespace skewrank::detail {

inline Vec unit(size_t n, size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

/// x . t for a dual vector x given by coordinates.
inline Multivector hook(const Vec& x, const Multivector& t) {
  return contract(Multivector::vector(x, !t.dual()), t);
}

inline Vec scaled(const Vec& v, const Scalar& c) {
  Vec out = v;
  for (auto& x : out) x *= c;
  return out;
}

inline Vec added(const Vec& a, const Vec& b) {
  Vec out = a;
  for (size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline Mask full_mask(int n) { return (Mask{1} << n) - 1; }

/// Matrix whose columns are the dense coordinates of the given multivectors.
inline Matrix columns_of(const std::vector<Multivector>& cols) {
  if (cols.empty()) return Matrix();
  size_t rows = binomial(cols[0].dim(), cols[0].degree());
  Matrix m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    Vec d = cols[j].dense();
    for (size_t i = 0; i < rows; ++i) m(i, j) = d[i];
  }
  return m;
}

/// Field tag of a multivector (1 for rational coefficients).
inline mpz_class field_of(const Multivector& t) {
  mpz_class d = 1;
  for (const auto& kv : t.terms())
    if (!kv.second.is_rational()) d = kv.second.D();
  return d;
}

/// Lifts every vector of an exact decomposition from W-coordinates into V.
Decomposition lift_decomposition(const Decomposition& dec, const EssentialSpace& es);
/// Recomputes field_D from the terms.
void refresh_field(Decomposition& dec);

/// Exact three-term decompositions used by the 7-variable classifier.
std::optional<Decomposition> shared_vector_decompose(const Multivector& t);
std::optional<Decomposition> ix_decompose(const Multivector& t);
/// Lines l (in V) with l ^ t decomposable for rank B = 2, from the binary
/// quadratic form of B on its image.
std::vector<Vec> viii_lines(const Multivector& t, const Matrix& B);

std::mt19937_64 make_rng(uint64_t seed, uint64_t stream);

// ---------------------------------------------------------------- dense kernels
//
// Trivectors of dimension <= 8 stored densely, indexed by mask (size 1 << dim).
// Templated so the exact and the floating-point paths share the same sign logic.

/// (S1, S2, S3) with |S1| = |S2| = 2, |S3| = 3 partitioning {0..6}, and the
/// sign of e_S1 ^ e_S2 ^ e_S3 relative to the volume form.
struct BTriple {
  Mask s1, s2, s3;
  int sign;
};
const std::vector<BTriple>& b_triples();

/// omega_a = e_a* . t as a dense 2-form (indexed by mask).
template <class T>
std::vector<T> dense_hook(const std::vector<T>& t, int dim, int a) {
  std::vector<T> out(t.size(), T(0));
  const Mask bit = Mask{1} << a, below = bit - 1;
  for (Mask m = 0; m < (Mask{1} << dim); ++m) {
    if (popcount(m) != 3 || !(m & bit)) continue;
    out[m & ~bit] = (popcount(m & below) % 2) ? T(-t[m]) : t[m];
  }
  return out;
}

/// B[a][b] = vol-coefficient of omega_a ^ omega_b ^ t (dimension 7).
template <class T>
std::vector<std::vector<T>> dense_b_matrix(const std::vector<T>& t) {
  std::vector<std::vector<T>> om;
  for (int a = 0; a < 7; ++a) om.push_back(dense_hook(t, 7, a));
  std::vector<std::vector<T>> B(7, std::vector<T>(7, T(0)));
  for (int a = 0; a < 7; ++a)
    for (int b = a; b < 7; ++b) {
      T acc(0);
      for (const auto& tr : b_triples()) {
        T x = om[a][tr.s1] * om[b][tr.s2] * t[tr.s3];
        if (tr.sign < 0) acc -= x;
        else acc += x;
      }
      B[a][b] = acc;
      B[b][a] = acc;
    }
  return B;
}

/// Dense mask-indexed coefficients of a multivector.
inline Vec dense_by_mask(const Multivector& t) {
  Vec out(std::size_t{1} << t.dim());
  for (const auto& [m, c] : t.terms()) out[m] = c;
  return out;
}

}  // namespace skewrank::detail
