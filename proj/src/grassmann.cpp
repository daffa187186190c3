#include "skewrank/grassmann.hpp"

namespace skewrank {

Multivector DecomposableCertificate::expand(int dim) const {
  if (factors.empty()) return Multivector::scalar(dim, scale);
  return scale * wedge_vectors(factors);
}

std::optional<DecomposableCertificate> is_decomposable(const Multivector& t) {
  if (t.is_zero()) throw ContractViolation("decomposability of the zero tensor is undefined");
  const int d = t.degree();
  if (d == 0) return DecomposableCertificate{{}, t.coeff(0)};
  Subspace k = kernel(catalecticant(t, 1).M);
  if (k.dim() != static_cast<size_t>(t.dim() - d)) return std::nullopt;
  Subspace span = perp(k);
  DecomposableCertificate cert;
  cert.factors = span.vectors();
  // The wedge of echelon rows has coefficient 1 on the pivot set.
  Mask pivots = 0;
  for (size_t p : span.pivots()) pivots |= Mask{1} << p;
  cert.scale = t.coeff(pivots);
  if (cert.expand(t.dim()) != t) throw std::logic_error("decomposability certificate mismatch");
  return cert;
}

namespace {
Scalar signed_coeff(const Multivector& t, const std::vector<int>& idx) {
  Mask m = 0;
  int inversions = 0;
  for (int v : idx) {
    if (m & (Mask{1} << v)) return Scalar();
    inversions += popcount(m & ~((Mask{2} << v) - 1));
    m |= Mask{1} << v;
  }
  Scalar c = t.coeff(m);
  return inversions % 2 ? -c : c;
}
}  // namespace

Scalar plucker_relation(const Multivector& t, const std::vector<int>& I, const std::vector<int>& J) {
  const int d = t.degree();
  if (static_cast<int>(I.size()) != d - 1 || static_cast<int>(J.size()) != d + 1)
    throw ContractViolation("Pluecker relation needs |I| = d-1 and |J| = d+1");
  Scalar total;
  for (size_t k = 0; k < J.size(); ++k) {
    std::vector<int> a = I;
    a.push_back(J[k]);
    std::vector<int> b;
    for (size_t l = 0; l < J.size(); ++l)
      if (l != k) b.push_back(J[l]);
    Scalar term = signed_coeff(t, a) * signed_coeff(t, b);
    if (k % 2) total -= term;
    else total += term;
  }
  return total;
}

std::vector<Scalar> plucker_residuals(const Multivector& t) {
  const int d = t.degree(), n = t.dim();
  std::vector<Scalar> out;
  if (d < 2 || d > n - 2) return out;  // every element is decomposable
  for (Mask mi : lex_basis(n, d - 1))
    for (Mask mj : lex_basis(n, d + 1)) out.push_back(plucker_relation(t, mask_indices(mi), mask_indices(mj)));
  return out;
}

RankOneSum rank_one_sum(const Multivector& v1, const Multivector& v2) {
  auto c1 = is_decomposable(v1);
  auto c2 = is_decomposable(v2);
  if (!c1 || !c2) throw ContractViolation("rank_one_sum needs decomposable inputs");
  const size_t n = static_cast<size_t>(v1.dim());
  Subspace a = Subspace::span(c1->factors, n), b = Subspace::span(c2->factors, n);
  size_t meet = intersect(a, b).dim();
  RankOneSum r;
  Multivector s = v1 + v2;
  if (s.is_zero()) {
    r.rank = 0;
    return r;
  }
  if (meet + 1 >= static_cast<size_t>(v1.degree())) {
    r.rank = 1;
    r.certificate = is_decomposable(s);
    if (!r.certificate) throw std::logic_error("intersection criterion disagrees with decomposability");
  } else {
    r.rank = 2;
  }
  return r;
}

bool line_in_grassmannian(const Multivector& v1, const Multivector& v2) {
  return rank_one_sum(v1, v2).rank <= 1;
}

Matrix two_form_matrix(const Multivector& t) {
  if (t.degree() != 2) throw ContractViolation("two_form_matrix needs a 2-form");
  const size_t n = static_cast<size_t>(t.dim());
  Matrix m(n, n);
  for (const auto& [mask, c] : t.terms()) {
    auto idx = mask_indices(mask);
    m(static_cast<size_t>(idx[0]), static_cast<size_t>(idx[1])) = c;
    m(static_cast<size_t>(idx[1]), static_cast<size_t>(idx[0])) = -c;
  }
  return m;
}

std::vector<SimpleTerm> two_form_decompose(const Multivector& t) {
  if (t.degree() != 2) throw ContractViolation("two_form_decompose needs a 2-form");
  std::vector<SimpleTerm> out;
  Multivector rest = t;
  while (!rest.is_zero()) {
    // Pivot on the lex-first nonzero coefficient w_ij: w - (e_i* . w)^(e_j* . w)/w_ij
    // vanishes on rows i and j and has rank two less.
    auto [mask, c] = *rest.terms().begin();
    auto idx = mask_indices(mask);
    Matrix m = two_form_matrix(rest);
    Vec u = m.row(static_cast<size_t>(idx[0])), v = m.row(static_cast<size_t>(idx[1]));
    SimpleTerm term{c.inverse(), {u, v}};
    rest -= term.coeff * wedge_vectors(term.vectors, t.dual());
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace skewrank
