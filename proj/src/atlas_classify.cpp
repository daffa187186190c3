// Orbit classification and exact minimal decompositions for up to eight
// essential variables.
#include <algorithm>
#include <thread>

#include "atlas_internal.hpp"

namespace skewrank {

using detail::added;
using detail::hook;
using detail::is_zero_vec;
using detail::scaled;
using detail::unit;

namespace {

void require_trivector(const Multivector& t) {
  if (t.degree() != 3 || t.dual()) throw ContractViolation("classification needs a primal trivector");
  if (t.is_zero()) throw ContractViolation("the zero tensor has rank 0 and no orbit");
}

Multivector vec_mv(const Vec& v) { return Multivector::vector(v); }

/// Kernel of x -> x ^ t on vectors x of V.
Subspace wedge_kernel(const Multivector& t) {
  std::vector<Multivector> cols;
  for (int i = 0; i < t.dim(); ++i) cols.push_back(wedge(vec_mv(unit(static_cast<size_t>(t.dim()), static_cast<size_t>(i))), t));
  return kernel(detail::columns_of(cols));
}

/// Ratio a / b of proportional multivectors (b nonzero).
std::optional<Scalar> ratio(const Multivector& a, const Multivector& b) {
  if (b.is_zero()) return std::nullopt;
  auto [m, c] = *b.terms().begin();
  Scalar r = a.coeff(m) / c;
  if (a != r * b) return std::nullopt;
  return r;
}

Decomposition make_dec(int dim, std::vector<Term> terms) {
  Decomposition d;
  d.dim = dim;
  d.terms = std::move(terms);
  detail::refresh_field(d);
  return d;
}

Decomposition unavailable(int dim, const std::string& why) {
  Decomposition d;
  d.dim = dim;
  d.available = false;
  d.diagnostic = why;
  return d;
}

/// Accepts a candidate decomposition only when it expands back to t.
std::optional<Decomposition> checked(const Multivector& t, std::optional<Decomposition> d) {
  if (!d || !d->available || d->numeric) return d;
  if (d->expand() != t) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------- six variables

std::optional<Decomposition> split_v(const Multivector& t) {
  Scalar q = split_invariant(t);
  Scalar mu2 = q / Scalar(6);
  std::optional<Scalar> mu;
  if (mu2.is_rational()) mu = Scalar::sqrt_of(mu2.a());
  else mu = Scalar::sqrt_in_field(mu2, mu2.D());
  if (!mu) return std::nullopt;
  Matrix T = split_endomorphism(t);
  auto shifted = [&](const Scalar& s) {
    Matrix m = T;
    for (size_t i = 0; i < 6; ++i) m(i, i) -= s;
    return m;
  };
  Subspace Eplus = kernel(shifted(*mu)), Eminus = kernel(shifted(-*mu));
  if (Eplus.dim() != 3 || Eminus.dim() != 3) return std::nullopt;
  Subspace U1 = perp(Eminus), U2 = perp(Eplus);
  Multivector A = wedge_vectors(U1.vectors()), B = wedge_vectors(U2.vectors());
  Matrix sys = detail::columns_of({A, B});
  auto ab = solve(sys, t.dense());
  if (!ab) return std::nullopt;
  return make_dec(6, {Term{(*ab)[0], U1.vectors()}, Term{(*ab)[1], U2.vectors()}});
}

std::optional<Decomposition> iv_decompose(const Multivector& t) {
  Subspace K = kernel(split_endomorphism(t));
  if (K.dim() != 3) return std::nullopt;
  Subspace U = perp(K);
  std::vector<Vec> basis = U.vectors();
  for (auto& v : complement_basis(U)) basis.push_back(v);
  Matrix Bm(6, 6);
  for (size_t j = 0; j < 6; ++j)
    for (size_t i = 0; i < 6; ++i) Bm(i, j) = basis[j][i];
  Multivector tp = change_basis(t, inverse(Bm));
  Scalar c = tp.coeff(mask_of({0, 1, 2}, 6));
  auto y = [&](int i, int j) {
    Vec out(6);
    for (int k = 3; k < 6; ++k) out = added(out, scaled(basis[static_cast<size_t>(k)], tp.coeff(mask_of({i, j, k}, 6))));
    return out;
  };
  const Vec& b0 = basis[0];
  const Vec& b1 = basis[1];
  const Vec& b2 = basis[2];
  return make_dec(6, {Term{Scalar(1), {added(y(1, 2), scaled(b0, c)), b1, b2}},
                      Term{Scalar(1), {b0, scaled(y(0, 2), Scalar(-1)), b2}},
                      Term{Scalar(1), {b0, b1, y(0, 1)}}});
}

Classification finish(OrbitLabel label, size_t m) {
  Classification c;
  c.labels = {label};
  c.rank = info(label).rank;
  c.n_essential = m;
  return c;
}

/// Lifts a decomposition found on the essential space and attaches it, or marks
/// it unavailable when no exact recipe succeeded.
void attach(Classification& c, const Multivector& t, const EssentialSpace& es,
            const std::optional<Decomposition>& dec, const std::string& what) {
  if (!dec) {
    c.decomposition = unavailable(t.dim(), "no exact decomposition found for " + what);
    return;
  }
  if (!dec->available) {
    Decomposition d = *dec;
    d.dim = t.dim();
    c.decomposition = d;
    return;
  }
  Decomposition lifted = detail::lift_decomposition(*dec, es);
  if (!lifted.numeric && lifted.expand() != t) {
    c.decomposition = unavailable(t.dim(), "internal: lifted decomposition does not expand to the input");
    return;
  }
  c.decomposition = lifted;
}

}  // namespace

namespace detail {

std::optional<Decomposition> shared_vector_decompose(const Multivector& t) {
  Subspace k = wedge_kernel(t);
  if (k.dim() != 1) return std::nullopt;
  Vec v0 = k.vector(0);
  size_t j = 0;
  while (v0[j].is_zero()) ++j;
  Multivector omega = hook(scaled(unit(v0.size(), j), v0[j].inverse()), t);
  std::vector<Term> terms;
  for (auto& st : two_form_decompose(omega)) terms.push_back(Term{st.coeff, {v0, st.vectors[0], st.vectors[1]}});
  return checked(t, make_dec(t.dim(), std::move(terms)));
}

std::vector<Vec> viii_lines(const Multivector& t, const Matrix& B) {
  Subspace im = image(B);
  std::vector<Vec> candidates;
  if (im.dim() != 2) return candidates;
  Vec w1 = im.vector(0), w2 = im.vector(1);
  size_t p1 = im.pivots()[0], p2 = im.pivots()[1];
  Scalar m11 = B(p1, p1), m12 = B(p1, p2), m22 = B(p2, p2);
  auto push_roots = [&](bool first_form) {
    if (!m11.is_rational() || !m12.is_rational() || !m22.is_rational()) return;
    mpq_class a = m11.a(), b = 2 * m12.a(), c = m22.a();
    if (sgn(a) == 0) {
      candidates.push_back(w2);
      if (first_form) candidates.push_back(added(scaled(w1, Scalar(b)), scaled(w2, Scalar(-c))));
      else candidates.push_back(added(scaled(w1, Scalar(b)), scaled(w2, Scalar(c))));
      return;
    }
    for (const Scalar& r : quadratic_roots(a, b, c)) {
      if (first_form) candidates.push_back(added(w1, scaled(w2, -r)));
      else candidates.push_back(added(scaled(w1, r), w2));
    }
  };
  push_roots(true);
  push_roots(false);
  std::vector<Vec> out;
  for (const auto& l : candidates) {
    if (is_zero_vec(l)) continue;
    Multivector lt = wedge(vec_mv(l), t);
    if (lt.is_zero() || !is_decomposable(lt)) continue;
    bool dup = false;
    for (const auto& o : out)
      if (Subspace::span({o, l}, l.size()).dim() == 1) dup = true;
    if (!dup) out.push_back(l);
  }
  return out;
}

std::optional<Decomposition> ix_decompose(const Multivector& t) {
  const size_t n = static_cast<size_t>(t.dim());
  Matrix B = b_matrix(t);
  Subspace KB = kernel(B);
  if (KB.dim() != 3) return std::nullopt;
  std::vector<Vec> k = KB.vectors();
  std::vector<Multivector> om;
  for (const auto& v : k) om.push_back(hook(v, t));
  // Conic of z with rank((sum z_i k_i) . t) = 2: (sum z_i omega_i)^2 = 0.
  std::vector<Multivector> mon;
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Multivector q = wedge(om[static_cast<size_t>(i)], om[static_cast<size_t>(j)]);
      if (i != j) q *= Scalar(2);
      mon.push_back(q);
      idx.emplace_back(i, j);
    }
  Matrix C = detail::columns_of(mon);
  Vec conic;
  for (size_t r = 0; r < C.rows() && conic.empty(); ++r) {
    Vec row = C.row(r);
    if (!is_zero_vec(row)) conic = row;
  }
  if (conic.empty() || !std::all_of(conic.begin(), conic.end(), [](const Scalar& s) { return s.is_rational(); }))
    return std::nullopt;
  auto cf = [&](int i, int j) {
    for (size_t q = 0; q < idx.size(); ++q)
      if (idx[q] == std::make_pair(std::min(i, j), std::max(i, j))) return conic[q].a();
    return mpq_class(0);
  };
  auto point_ok = [&](const Vec& z) {
    Vec x(n);
    for (size_t i = 0; i < 3; ++i) x = added(x, scaled(k[i], z[i]));
    Multivector w = hook(x, t);
    return !w.is_zero() && rank(two_form_matrix(w)) == 2;
  };
  std::optional<Vec> z;
  std::optional<Vec> irrational;
  for (int v = 0; v < 3 && !z; ++v) {
    int a = (v + 1) % 3, b = (v + 2) % 3;
    for (int za = -4; za <= 4 && !z; ++za)
      for (int zb = -4; zb <= 4 && !z; ++zb) {
        if (za == 0 && zb == 0) continue;
        // cf(v,v) z^2 + (cf(v,a) za + cf(v,b) zb) z + rest = 0
        mpq_class A = cf(v, v), Bq = cf(v, a) * za + cf(v, b) * zb,
                  Cq = cf(a, a) * za * za + cf(b, b) * zb * zb + cf(a, b) * za * zb;
        std::vector<Scalar> roots;
        if (sgn(A) == 0) {
          if (sgn(Bq) == 0) continue;
          roots.push_back(Scalar(mpq_class(-Cq / Bq)));
        } else {
          roots = quadratic_roots(A, Bq, Cq);
        }
        for (const auto& r : roots) {
          Vec zz(3);
          zz[static_cast<size_t>(v)] = r;
          zz[static_cast<size_t>(a)] = za;
          zz[static_cast<size_t>(b)] = zb;
          if (!r.is_rational()) {
            if (!irrational && point_ok(zz)) irrational = zz;
            continue;
          }
          if (point_ok(zz)) {
            z = zz;
            break;
          }
        }
      }
  }
  if (!z) z = irrational;
  if (!z) return std::nullopt;
  Vec x1(n);
  for (size_t i = 0; i < 3; ++i) x1 = added(x1, scaled(k[i], (*z)[i]));
  Multivector omega = hook(x1, t);
  size_t j = 0;
  while (x1[j].is_zero()) ++j;
  Vec gamma = scaled(unit(n, j), x1[j].inverse());
  std::vector<Vec> kappa;  // basis of ker x1, indexed by i != j
  std::vector<size_t> keep;
  for (size_t i = 0; i < n; ++i) {
    if (i == j) continue;
    Vec v = unit(n, i);
    v[j] = -(x1[i] / x1[j]);
    kappa.push_back(v);
    keep.push_back(i);
  }
  // Coordinates of R = t - (gamma + k) ^ omega in the basis kappa: since
  // x1 . R = 0, they are the coefficients on masks avoiding j.
  auto project = [&](const Multivector& R) {
    Multivector out(static_cast<int>(n - 1), 3);
    for (const auto& [m, c] : R.terms()) {
      if (m >> j & 1) continue;
      Mask mm = 0;
      for (size_t q = 0; q < keep.size(); ++q)
        if (m >> keep[q] & 1) mm |= Mask{1} << q;
      out.add_term(mm, c);
    }
    return out;
  };
  auto residual = [&](const Vec& kv) { return t - wedge(vec_mv(added(gamma, kv)), omega); };
  auto kvec = [&](const Vec& y) {
    Vec out(n);
    for (size_t i = 0; i < y.size(); ++i) out = added(out, scaled(kappa[i], y[i]));
    return out;
  };
  auto q_at = [&](const Vec& y) { return split_invariant(project(residual(kvec(y)))); };
  const size_t m = n - 1;
  // q is quadratic along ker x1: fit q(y) = q0 + b.y + y^T S y.
  Vec zero(m);
  Scalar q0 = q_at(zero);
  Vec bvec(m);
  Matrix S(m, m);
  for (size_t i = 0; i < m; ++i) {
    Scalar qp = q_at(unit(m, i)), qm = q_at(scaled(unit(m, i), Scalar(-1)));
    bvec[i] = (qp - qm) / Scalar(2);
    S(i, i) = (qp + qm) / Scalar(2) - q0;
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t l = i + 1; l < m; ++l) {
      Scalar qij = q_at(added(unit(m, i), unit(m, l)));
      Scalar off = (qij - q0 - bvec[i] - bvec[l] - S(i, i) - S(l, l)) / Scalar(2);
      S(i, l) = off;
      S(l, i) = off;
    }
  // Along a null direction of S the invariant is affine, so it can be moved to
  // 6 inside the current field; the remainder then splits with mu = 1.
  Vec ychoice = zero;
  for (const auto& s : kernel(S).vectors()) {
    Scalar bs;
    for (size_t i = 0; i < m; ++i) bs += bvec[i] * s[i];
    if (bs.is_zero()) continue;
    Vec y = scaled(s, (Scalar(6) - q0) / bs);
    if (q_at(y) == Scalar(6)) {
      ychoice = y;
      break;
    }
  }
  Vec kv = kvec(ychoice);
  Multivector R = project(residual(kv));
  if (R.is_zero()) return std::nullopt;
  Classification sub = classify6(R);
  if (!sub.decomposition || !sub.decomposition->available) return std::nullopt;
  std::vector<Term> terms;
  for (const auto& st : two_form_decompose(omega))
    terms.push_back(Term{st.coeff, {added(gamma, kv), st.vectors[0], st.vectors[1]}});
  for (const auto& term : sub.decomposition->terms) {
    Term lifted{term.coeff, {}};
    for (const auto& v : term.vectors) lifted.vectors.push_back(kvec(v));
    terms.push_back(std::move(lifted));
  }
  return checked(t, make_dec(static_cast<int>(n), std::move(terms)));
}

}  // namespace detail

std::optional<Decomposition> decompose_with_l(const Multivector& t, const Vec& l) {
  require_trivector(t);
  const size_t n = static_cast<size_t>(t.dim());
  Multivector lt = wedge(vec_mv(l), t);
  if (lt.is_zero()) return std::nullopt;
  auto cert = is_decomposable(lt);
  if (!cert) return std::nullopt;
  std::vector<Vec> u;
  std::vector<Vec> span = {l};
  for (const auto& f : cert->factors) {
    if (u.size() == 3) break;
    std::vector<Vec> trial = span;
    trial.push_back(f);
    if (Subspace::span(trial, n).dim() == trial.size()) {
      span = trial;
      u.push_back(f);
    }
  }
  if (u.size() != 3) return std::nullopt;
  Multivector u123 = wedge_vectors(u);
  auto c = ratio(lt, wedge(vec_mv(l), u123));
  if (!c) return std::nullopt;
  Multivector t1 = t - *c * u123;
  size_t k = 0;
  while (l[k].is_zero()) ++k;
  Multivector w0 = hook(scaled(unit(n, k), l[k].inverse()), t1);
  Multivector w02 = wedge(w0, w0);
  Multivector L = vec_mv(l);
  std::vector<Multivector> xi = {wedge_vectors({u[1], u[2]}), -wedge_vectors({u[0], u[2]}), wedge_vectors({u[0], u[1]})};
  std::vector<Multivector> cols;
  for (const auto& x : xi) cols.push_back(Scalar(3) * *c * wedge(L, wedge(w02, x)));
  Multivector rhs = wedge(L, wedge(w02, w0));
  std::optional<Vec> a;
  if (rhs.is_zero()) a = Vec(3);
  else a = solve(detail::columns_of(cols), rhs.dense());
  if (!a) return std::nullopt;
  std::vector<Vec> v;
  for (size_t i = 0; i < 3; ++i) v.push_back(added(u[i], scaled(l, (*a)[i])));
  Multivector R = t - *c * wedge_vectors(v);
  std::vector<Term> terms = {Term{*c, v}};
  if (!R.is_zero()) {
    Classification sub;
    try {
      sub = classify6(R);
    } catch (const WrongClassifier&) {
      return std::nullopt;
    }
    if (!sub.decomposition || !sub.decomposition->available) return std::nullopt;
    for (const auto& term : sub.decomposition->terms) terms.push_back(term);
  }
  return checked(t, make_dec(static_cast<int>(n), std::move(terms)));
}

/// Orbit VII: l ^ t = l ^ u1 ^ u2 ^ u3 for the unique l, and t - c u1 u2 u3 is
/// l ^ omega with omega of rank 6 modulo l. That gives four terms, which is
/// minimal: no three-term presentation exists (see README, orbit VII).
static std::optional<Decomposition> vii_decompose(const Multivector& t, const Vec& l) {
  const size_t n = static_cast<size_t>(t.dim());
  Multivector lt = wedge(vec_mv(l), t);
  auto cert = is_decomposable(lt);
  if (lt.is_zero() || !cert) return std::nullopt;
  std::vector<Vec> u;
  std::vector<Vec> span = {l};
  for (const auto& f : cert->factors) {
    std::vector<Vec> trial = span;
    trial.push_back(f);
    if (u.size() < 3 && Subspace::span(trial, n).dim() == trial.size()) {
      span = trial;
      u.push_back(f);
    }
  }
  if (u.size() != 3) return std::nullopt;
  Multivector u123 = wedge_vectors(u);
  auto c = ratio(lt, wedge(vec_mv(l), u123));
  if (!c) return std::nullopt;
  Multivector R = t - *c * u123;
  size_t k = 0;
  while (l[k].is_zero()) ++k;
  Multivector omega = hook(scaled(unit(n, k), l[k].inverse()), R);
  std::vector<Term> terms = {Term{*c, u}};
  for (const auto& st : two_form_decompose(omega)) terms.push_back(Term{st.coeff, {l, st.vectors[0], st.vectors[1]}});
  return checked(t, make_dec(static_cast<int>(n), std::move(terms)));
}

// ---------------------------------------------------------------- classifiers

Classification classify6(const Multivector& t, const ClassifyOptions& opts) {
  require_trivector(t);
  EssentialSpace es = essential_space(t);
  const size_t m = es.dim();
  if (m > 6) throw WrongClassifier("classify6 needs at most 6 essential variables, got " + std::to_string(m));
  const Multivector& r = es.reduced;
  OrbitLabel label;
  std::optional<Decomposition> dec;
  if (m == 3) {
    label = OrbitLabel::II;
    if (opts.decompose)
      dec = make_dec(3, {Term{r.coeff(detail::full_mask(3)), {unit(3, 0), unit(3, 1), unit(3, 2)}}});
  } else if (m == 5) {
    label = OrbitLabel::III;
    if (opts.decompose) dec = detail::shared_vector_decompose(r);
  } else if (m == 6) {
    if (!split_invariant(r).is_zero()) {
      label = OrbitLabel::V;
      if (opts.decompose) dec = checked(r, split_v(r));
    } else {
      label = OrbitLabel::IV;
      if (opts.decompose) dec = checked(r, iv_decompose(r));
    }
  } else {
    throw InternalInconsistency("a nonzero trivector cannot have " + std::to_string(m) + " essential variables");
  }
  Classification c = finish(label, m);
  if (opts.decompose) attach(c, t, es, dec, to_string(label));
  return c;
}

Classification classify7(const Multivector& t, const ClassifyOptions& opts) {
  require_trivector(t);
  EssentialSpace es = essential_space(t);
  const size_t m = es.dim();
  if (m < 7) return classify6(t, opts);
  if (m > 7) throw WrongClassifier("classify7 needs at most 7 essential variables, got " + std::to_string(m));
  const Multivector& r = es.reduced;
  Matrix B = b_matrix(r);
  const size_t rk = rank(B);
  if (rk == 7) {
    Classification c = finish(OrbitLabel::X, m);
    if (opts.decompose) {
      Decomposition d = rank4_decompose7(t, opts.seed, opts.tolerance, opts.retry_budget);
      c.decomposition = d;
      if (d.numeric) c.note = "numeric rank-4 decomposition";
    }
    return c;
  }
  OrbitLabel label;
  std::optional<Decomposition> dec;
  if (wedge_kernel(r).dim() > 0) {
    label = OrbitLabel::VI;
    if (opts.decompose) dec = detail::shared_vector_decompose(r);
  } else if (rk == 1) {
    label = OrbitLabel::VII;
    if (opts.decompose) {
      Subspace im = image(B);
      dec = vii_decompose(r, im.vector(0));
    }
  } else if (rk == 2) {
    label = OrbitLabel::VIII;
    if (opts.decompose)
      for (const auto& l : detail::viii_lines(r, B)) {
        dec = decompose_with_l(r, l);
        if (dec) break;
      }
  } else if (rk == 4) {
    label = OrbitLabel::IX;
    if (opts.decompose) dec = detail::ix_decompose(r);
  } else {
    throw InternalInconsistency("rank B = " + std::to_string(rk) + " matches no orbit in 7 variables");
  }
  Classification c = finish(label, m);
  if (label == OrbitLabel::VII) {
    c.rank = 4;
    c.note = "orbit VII has border rank 3 but skew-symmetric rank 4; the catalog lists 3";
  }
  if (opts.decompose) attach(c, t, es, dec, to_string(label));
  return c;
}

namespace {

// Points y (in coordinates of the basis b) with rank((sum y_i b_i) . t) <= 2,
// when the solution set inside span(b) is a finite set of independent points.
std::vector<Vec> rank2_points(const Multivector& t, const std::vector<Vec>& b) {
  const size_t N = b.size();
  std::vector<Multivector> om;
  for (const auto& v : b) om.push_back(hook(v, t));
  std::vector<Multivector> cols;
  std::vector<std::pair<size_t, size_t>> idx;
  for (size_t i = 0; i < N; ++i)
    for (size_t j = i; j < N; ++j) {
      Multivector q = wedge(om[i], om[j]);
      if (i != j) q *= Scalar(2);
      cols.push_back(q);
      idx.emplace_back(i, j);
    }
  Subspace Z = kernel(detail::columns_of(cols));
  if (Z.dim() == 0) return {};
  auto sym = [&](const Vec& y) {
    Matrix M(N, N);
    for (size_t q = 0; q < idx.size(); ++q) {
      M(idx[q].first, idx[q].second) = y[q];
      M(idx[q].second, idx[q].first) = y[q];
    }
    return M;
  };
  std::vector<Matrix> mats;
  std::vector<Vec> colvecs;
  for (const auto& z : Z.vectors()) {
    mats.push_back(sym(z));
    for (size_t j = 0; j < N; ++j) colvecs.push_back(mats.back().col(j));
  }
  Subspace colspace = Subspace::span(colvecs, N);
  const size_t d = colspace.dim();
  if (d != Z.dim()) return {};
  std::vector<Vec> pts;
  if (d == 1) {
    pts.push_back(colspace.vector(0));
  } else {
    // Coordinates on the column space: M = C^T A C with C the echelon rows.
    std::vector<Vec> C = colspace.vectors();
    auto restrict_to = [&](const Matrix& M) {
      Matrix X(N, d);  // row q: coordinates of the q-th row of M
      for (size_t q = 0; q < N; ++q) {
        Vec c = colspace.coordinates(M.row(q));
        for (size_t i = 0; i < d; ++i) X(q, i) = c[i];
      }
      Matrix A(d, d);
      for (size_t i = 0; i < d; ++i) {
        Vec c = colspace.coordinates(X.col(i));
        for (size_t j = 0; j < d; ++j) A(j, i) = c[j];
      }
      return A;
    };
    // Generic combinations with nonsingular A1.
    std::optional<Matrix> A1, A2;
    for (int trial = 1; trial <= 8 && !A1; ++trial) {
      Matrix M1(N, N), M2(N, N);
      for (size_t z = 0; z < mats.size(); ++z) {
        Scalar c1 = Scalar(static_cast<long>(z + 1) * trial + 1), c2 = Scalar(static_cast<long>((z * z) % 7) + trial);
        for (size_t i = 0; i < N; ++i)
          for (size_t j = 0; j < N; ++j) {
            M1(i, j) += c1 * mats[z](i, j);
            M2(i, j) += c2 * mats[z](i, j);
          }
      }
      Matrix R1 = restrict_to(M1);
      if (!determinant(R1).is_zero()) {
        A1 = R1;
        A2 = restrict_to(M2);
      }
    }
    if (!A1) return {};
    // A = sum lambda_a c_a c_a^T, so A2 A1^{-1} has the points c_a as eigenvectors.
    Matrix P = *A2 * inverse(*A1);
    if (!P.all_rational()) return {};
    for (const auto& root : rational_roots(charpoly(P))) {
      Matrix S = P;
      for (size_t i = 0; i < d; ++i) S(i, i) -= Scalar(root);
      Subspace e = kernel(S);
      if (e.dim() != 1) return {};
      Vec coords = e.vector(0);
      Vec y(N);
      for (size_t i = 0; i < d; ++i) y = added(y, scaled(C[i], coords[i]));
      pts.push_back(y);
    }
  }
  return pts;
}

// Support of a 2-form: span of the rows of its matrix.
Subspace support(const Multivector& w) { return Subspace::row_space(two_form_matrix(w)); }

// Three-term decomposition of an orbit XVI / XIX tensor in 8 variables.
std::optional<Decomposition> slice_decompose(const Multivector& t, uint64_t seed) {
  const size_t n = 8;
  auto rng = detail::make_rng(seed, 0x8badf00du);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int c = 1; c <= 7; ++c) {
    const size_t N = n - static_cast<size_t>(c);
    std::vector<Vec> b;
    for (size_t i = 0; i < N; ++i) {
      Vec v(n);
      for (auto& x : v) x = dist(rng);
      b.push_back(v);
    }
    if (Subspace::span(b, n).dim() != N) continue;
    for (const auto& y : rank2_points(t, b)) {
      Vec x1(n);
      for (size_t i = 0; i < N; ++i) x1 = added(x1, scaled(b[i], y[i]));
      Multivector w1 = hook(x1, t);
      if (w1.is_zero() || rank(two_form_matrix(w1)) > 2) continue;
      std::vector<Multivector> cols;
      for (size_t a = 0; a < n; ++a) cols.push_back(wedge(w1, hook(unit(n, a), t)));
      Subspace K = kernel(detail::columns_of(cols));
      Subspace P(n);
      std::optional<Subspace> meet;
      for (const auto& kv : K.vectors()) {
        Multivector wk = hook(kv, t);
        if (wk.is_zero()) continue;
        Subspace s = support(wk);
        P = sum(P, s);
        meet = meet ? intersect(*meet, s) : s;
      }
      if (P.dim() == 3) {
        Multivector A = wedge_vectors(P.vectors());
        auto lambda = ratio(w1, hook(x1, A));
        if (!lambda) continue;
        Multivector R = t - *lambda * A;
        std::vector<Term> terms = {Term{*lambda, P.vectors()}};
        if (!R.is_zero()) {
          Classification sub;
          try {
            sub = classify6(R);
          } catch (const WrongClassifier&) {
            continue;
          }
          if (!sub.decomposition || !sub.decomposition->available) continue;
          for (const auto& term : sub.decomposition->terms) terms.push_back(term);
        }
        auto d = checked(t, make_dec(8, std::move(terms)));
        if (d && d->size() == 3) return d;
      } else if (meet && meet->dim() == 1) {
        auto d = decompose_with_l(t, meet->vector(0));
        if (d && d->size() == 3) return d;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Classification classify8(const Multivector& t, const ClassifyOptions& opts) {
  require_trivector(t);
  EssentialSpace es = essential_space(t);
  const size_t m = es.dim();
  if (m < 8) return classify7(t, opts);
  if (m > 8) throw UnsupportedDimension("more than 8 essential variables");
  const Multivector& r = es.reduced;
  auto inv = rank_invariants8(r);
  Classification c;
  c.n_essential = m;
  c.labels = signature_table().match(inv);
  if (c.labels.empty()) throw InternalInconsistency("8-variable rank invariants match no orbit");
  int rk = info(c.labels[0]).rank;
  bool common = std::all_of(c.labels.begin(), c.labels.end(), [&](OrbitLabel l) { return info(l).rank == rk; });
  if (common) c.rank = rk;
  if (c.labels.size() > 1) c.note = "signature shared by several orbits";
  if (!opts.decompose) return c;
  if (c.labels.size() == 1 && (c.labels[0] == OrbitLabel::XVI || c.labels[0] == OrbitLabel::XIX)) {
    attach(c, t, es, slice_decompose(r, opts.seed), to_string(c.labels[0]));
    return c;
  }
  // The table's own presentation, when the input is literally the normal form.
  for (OrbitLabel l : c.labels) {
    if (t != embed(normal_form(l), t.dim())) continue;
    Decomposition d = standard_decomposition(l, opts.seed);
    for (auto& term : d.terms)
      for (auto& v : term.vectors) v.resize(static_cast<size_t>(t.dim()));
    d.dim = t.dim();
    if (d.available && !d.numeric && d.expand() == t) {
      c.decomposition = d;
      c.labels = {l};
      c.rank = info(l).rank;
      c.note.clear();
      return c;
    }
  }
  c.decomposition = unavailable(t.dim(), "no exact recipe for this 8-variable orbit");
  return c;
}

Classification classify(const Multivector& t, const ClassifyOptions& opts) {
  require_trivector(t);
  EssentialSpace es = essential_space(t);
  if (es.dim() > 8) throw UnsupportedDimension("classification supports at most 8 essential variables");
  if (es.dim() <= 6) return classify6(t, opts);
  if (es.dim() == 7) return classify7(t, opts);
  return classify8(t, opts);
}

std::vector<Classification> classify_batch(const std::vector<Multivector>& inputs, const ClassifyOptions& opts,
                                           int jobs) {
  std::vector<Classification> out(inputs.size());
  const size_t nj = static_cast<size_t>(std::max(1, jobs));
  auto work = [&](size_t tid) {
    for (size_t i = tid; i < inputs.size(); i += nj) {
      try {
        out[i] = classify(inputs[i], opts);
      } catch (const std::exception& e) {
        out[i].note = std::string("error: ") + e.what();
      }
    }
  };
  if (nj == 1) {
    work(0);
    return out;
  }
  std::vector<std::thread> pool;
  for (size_t tid = 0; tid < nj; ++tid) pool.emplace_back(work, tid);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace skewrank
