// Decomposability, Pluecker quadrics, sums of two points, 2-form decomposition.
#pragma once

#include <optional>
#include <vector>

#include "skewrank/multivector.hpp"

namespace skewrank {

/// t = scale * factors[0] ^ ... ^ factors[d-1] with the factors the echelon
/// basis of the space of t.
struct DecomposableCertificate {
  std::vector<Vec> factors;
  Scalar scale;
  Multivector expand(int dim) const;
};

/// Kernel-dimension test: t is decomposable iff dim ker C_t^{1,d-1} = dim - d.
std::optional<DecomposableCertificate> is_decomposable(const Multivector& t);

/// One three-term (in general (d+1)-term) Pluecker quadric, indexed by a
/// (d-1)-subset I and a (d+1)-subset J:
///   sum_k (-1)^k p_{I+j_k} p_{J-j_k}   (j_k the k-th element of J, k from 0)
/// with p_S the coefficient of e_S after sorting (sign included).
Scalar plucker_relation(const Multivector& t, const std::vector<int>& I, const std::vector<int>& J);
/// All quadrics over pairs (I, J) with I and J disjoint-free in the sense that
/// the relation is not trivially zero, evaluated at t.
std::vector<Scalar> plucker_residuals(const Multivector& t);

struct RankOneSum {
  int rank = 0;  // 1 or 2
  std::optional<DecomposableCertificate> certificate;
};
RankOneSum rank_one_sum(const Multivector& v1, const Multivector& v2);
bool line_in_grassmannian(const Multivector& v1, const Multivector& v2);

/// A sum of rank-one terms c * (v1 ^ ... ^ vk).
struct SimpleTerm {
  Scalar coeff;
  std::vector<Vec> vectors;
};
/// Skew rank = matrix rank / 2; returns that many terms summing to t exactly.
std::vector<SimpleTerm> two_form_decompose(const Multivector& t);
/// Matrix of a 2-form: M[i][j] = coefficient of e_i ^ e_j (antisymmetric).
Matrix two_form_matrix(const Multivector& t);

}  // namespace skewrank
