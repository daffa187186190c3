#include "skewrank/apolarity.hpp"

namespace skewrank {

std::vector<Multivector> GradedAnnihilator::basis(int s) const {
  std::vector<Multivector> out;
  for (const Vec& v : pieces.at(static_cast<size_t>(s)).vectors())
    out.push_back(Multivector::from_dense(dim, s, true, v));
  return out;
}

GradedAnnihilator annihilator(const Multivector& t) {
  if (t.dual()) throw ContractViolation("annihilator expects a primal tensor");
  GradedAnnihilator g;
  g.dim = t.dim();
  g.degree = t.degree();
  for (int s = 0; s <= t.degree(); ++s) g.pieces.push_back(kernel(catalecticant(t, s).M));
  return g;
}

namespace {

bool looks_decomposable(const Multivector& v) {
  if (v.is_zero() || v.dual()) return false;
  if (v.degree() == 0) return true;
  size_t k = kernel(catalecticant(v, 1).M).dim();
  return k == static_cast<size_t>(v.dim() - v.degree());
}

// Span of V* ^ I inside the degree-(s) forms, where I is a degree-(s-1) piece.
Subspace wedge_with_linear(const Subspace& prev, int dim, int s) {
  std::vector<Vec> rows;
  for (const Vec& b : prev.vectors()) {
    Multivector m = Multivector::from_dense(dim, s - 1, true, b);
    for (int j = 0; j < dim; ++j) {
      Multivector w = wedge(Multivector::basis(dim, {j}, true), m);
      if (!w.is_zero()) rows.push_back(w.dense());
    }
  }
  return Subspace::span(rows, binomial(dim, s));
}

}  // namespace

std::vector<int> PointIdealReport::generator_degrees() const {
  std::vector<int> out;
  for (size_t s = 0; s < generator_counts.size(); ++s)
    if (generator_counts[s] > 0) out.push_back(static_cast<int>(s));
  return out;
}

PointIdealReport point_ideal(const std::vector<Multivector>& points, int max_degree,
                             const std::optional<Multivector>& t) {
  if (points.empty()) throw ContractViolation("point_ideal needs at least one point");
  const int dim = points[0].dim(), d = points[0].degree();
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != dim || points[i].degree() != d)
      throw ContractViolation("points must share dimension and degree");
    if (!looks_decomposable(points[i]))
      throw ContractViolation("point " + std::to_string(i) + " is not decomposable");
  }
  PointIdealReport rep;
  rep.dim = dim;
  rep.degree = d;
  rep.max_degree = max_degree < 0 ? dim : std::min(max_degree, dim);
  for (int s = 0; s <= rep.max_degree; ++s) {
    Subspace piece = Subspace::full(binomial(dim, s));
    if (s <= d)
      for (const auto& p : points) piece = intersect(piece, kernel(catalecticant(p, s).M));
    rep.pieces.push_back(piece);
    rep.dims.push_back(piece.dim());
    std::vector<Multivector> gens;
    if (s == 0) {
      for (const Vec& v : piece.vectors()) gens.push_back(Multivector::from_dense(dim, 0, true, v));
    } else {
      Subspace lower = wedge_with_linear(rep.pieces[static_cast<size_t>(s - 1)], dim, s);
      std::vector<Vec> acc = lower.vectors();
      size_t r = lower.dim();
      for (const Vec& v : piece.vectors()) {
        acc.push_back(v);
        size_t nr = rank(Matrix::from_rows(acc, binomial(dim, s)));
        if (nr > r) {
          gens.push_back(Multivector::from_dense(dim, s, true, v));
          r = nr;
        } else {
          acc.pop_back();
        }
      }
    }
    rep.generator_counts.push_back(gens.size());
    rep.generators.push_back(std::move(gens));
  }
  if (t) {
    if (t->dim() != dim || t->degree() != d) throw ContractViolation("tensor shape mismatch");
    rep.has_tensor = true;
    GradedAnnihilator ann = annihilator(*t);
    rep.condition_ii = true;
    for (int s = 0; s <= std::min(d, rep.max_degree); ++s)
      if (!ann.pieces[static_cast<size_t>(s)].contains(rep.pieces[static_cast<size_t>(s)]))
        rep.condition_ii = false;
    Subspace id = Subspace::full(binomial(dim, d));
    for (const auto& p : points) id = intersect(id, kernel(catalecticant(p, d).M));
    rep.condition_iii = ann.pieces[static_cast<size_t>(d)].contains(id);
  }
  return rep;
}

ApolarityResult apolarity_check(const Multivector& t, const std::vector<Multivector>& points) {
  ApolarityResult res;
  if (points.empty()) {
    res.apolar = t.is_zero();
    return res;
  }
  PointIdealReport rep = point_ideal(points, t.degree(), t);
  if (!rep.condition_iii) return res;
  Matrix m(binomial(t.dim(), t.degree()), points.size());
  for (size_t j = 0; j < points.size(); ++j) {
    Vec c = points[j].dense();
    for (size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  auto sol = solve(m, t.dense());
  if (!sol) return res;  // not reachable for genuinely apolar input
  res.apolar = true;
  res.coefficients = *sol;
  return res;
}

Vec EssentialSpace::lift(const Vec& w) const {
  if (w.size() != W.dim()) throw ContractViolation("coordinate length mismatch");
  Vec v(W.ambient());
  for (size_t i = 0; i < W.dim(); ++i) {
    if (w[i].is_zero()) continue;
    for (size_t j = 0; j < W.ambient(); ++j)
      if (!W.basis()(i, j).is_zero()) v[j] += w[i] * W.basis()(i, j);
  }
  return v;
}

Multivector EssentialSpace::lift(const Multivector& m) const {
  if (static_cast<size_t>(m.dim()) != W.dim()) throw ContractViolation("multivector is not over W");
  Multivector out(static_cast<int>(W.ambient()), m.degree(), false);
  for (const auto& [mask, c] : m.terms()) {
    std::vector<Vec> vs;
    for (int i : mask_indices(mask)) vs.push_back(W.vector(static_cast<size_t>(i)));
    out += c * wedge_vectors(vs);
  }
  return out;
}

EssentialSpace essential_space(const Multivector& t) {
  if (t.is_zero()) throw ContractViolation("the zero tensor has no essential space");
  if (t.dual()) throw ContractViolation("essential_space expects a primal tensor");
  EssentialSpace es;
  es.W = perp(kernel(catalecticant(t, 1).M));
  const auto& piv = es.W.pivots();
  es.reduced = Multivector(static_cast<int>(es.W.dim()), t.degree());
  // The echelon rows restricted to the pivot columns form the identity, so the
  // coefficient of w_S is the coefficient of e_{pivots(S)}.
  for (Mask m : lex_basis(static_cast<int>(es.W.dim()), t.degree())) {
    Mask big = 0;
    for (int i : mask_indices(m)) big |= Mask{1} << piv[static_cast<size_t>(i)];
    es.reduced.add_term(m, t.coeff(big));
  }
  if (es.lift(es.reduced) != t) throw std::logic_error("essential reduction failed to round-trip");
  return es;
}

}  // namespace skewrank
