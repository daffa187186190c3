// Multivectors in the exterior algebra of K^n (or its dual), with wedge,
// pairing and contraction.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skewrank/linalg.hpp"

namespace skewrank {

/// An increasing index tuple encoded as a bitmask (bit i set <=> index i present).
using Mask = uint32_t;
inline constexpr int kMaxDim = 16;

inline int popcount(Mask m) { return __builtin_popcount(m); }
std::vector<int> mask_indices(Mask m);
/// Builds the mask of a strictly increasing tuple; throws ContractViolation on
/// repeated or out-of-range indices. Unsorted input is accepted and the sign of
/// the sorting permutation is written to *sign (if given).
Mask mask_of(const std::vector<int>& indices, int dim, int* sign = nullptr);

/// Lex order of increasing tuples: lower degree first, then lexicographic on the
/// sorted index lists. For equal degree, a < b iff the lowest index in which they
/// differ belongs to a.
struct LexLess {
  bool operator()(Mask a, Mask b) const {
    if (a == b) return false;
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    Mask diff = a ^ b;
    return (a & diff & (~diff + 1)) != 0;
  }
};

/// Lex-ordered basis of k-subsets of {0..n-1} (cached, thread-safe).
const std::vector<Mask>& lex_basis(int n, int k);
/// Position of `m` in lex_basis(n, popcount(m)).
size_t lex_index(Mask m, int n);
uint64_t binomial(int n, int k);

/// Sign of e_a ^ e_b relative to e_{a|b} (0 if a and b share an index).
int wedge_sign(Mask a, Mask b);
/// Sign with which e*_s contracts e_t (s subset of t) onto e_{t\s}.
int contract_sign(Mask s, Mask t);

class Multivector {
 public:
  using Terms = std::map<Mask, Scalar, LexLess>;

  Multivector() = default;
  Multivector(int dim, int degree, bool dual = false);

  /// c * e_{i1} ^ ... ^ e_{id}; indices may be unsorted (sign applied).
  static Multivector basis(int dim, const std::vector<int>& indices, bool dual = false,
                           const Scalar& c = Scalar(1));
  static Multivector vector(const Vec& coords, bool dual = false);
  static Multivector scalar(int dim, const Scalar& c, bool dual = false);
  /// Inverse of dense(): coordinates in lex_basis order.
  static Multivector from_dense(int dim, int degree, bool dual, const Vec& coords);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool dual() const { return dual_; }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(Mask m) const;
  void add_term(Mask m, const Scalar& c);
  Vec dense() const;
  /// Coordinates of a degree-1 element.
  Vec as_vector() const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(const Scalar& c);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(const Scalar& c, Multivector a) { return a *= c; }
  Multivector operator-() const;
  bool operator==(const Multivector& o) const;
  bool operator!=(const Multivector& o) const { return !(*this == o); }

  /// e.g. "e0^e1^e2 - 2 e3^e4^e5" (dual elements print f0*^...).
  std::string str() const;

 private:
  int dim_ = 0, degree_ = 0;
  bool dual_ = false;
  Terms terms_;

  void check_compatible(const Multivector& o, const char* what) const;
};

Multivector wedge(const Multivector& a, const Multivector& b);
/// Wedge of a list of vectors (each of length dim).
Multivector wedge_vectors(const std::vector<Vec>& vectors, bool dual = false);
/// Determinant pairing of equal-degree elements with opposite flags.
Scalar pair(const Multivector& h, const Multivector& v);
/// Skew-apolarity contraction h . v of a degree-s element into a degree-d
/// element with the opposite flag; the result has degree d - s and v's flag.
Multivector contract(const Multivector& h, const Multivector& v);
/// Coefficient of the volume form in a ^ b.
Scalar top_pairing_scalar(const Multivector& a, const Multivector& b);

/// Matrix of the map h -> h . t from the degree-s piece of the opposite algebra
/// into the degree-(d-s) piece; rows and columns in lex order.
struct CatalecticantMatrix {
  int s = 0, d = 0, dim = 0;
  Matrix M;
  std::vector<Mask> row_basis, col_basis;
};
CatalecticantMatrix catalecticant(const Multivector& t, int s);

/// Image of t under the linear map whose j-th column is g e_j. Dual elements
/// are transported by the inverse transpose so that pairings are preserved.
Multivector change_basis(const Multivector& t, const Matrix& g);

}  // namespace skewrank
