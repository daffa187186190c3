// Rank-4 decompositions in seven essential variables. A random decomposable w
// spans a line t + s w that meets the rank-3 locus where det B vanishes; a
// rational meeting point gives an exact decomposition, otherwise the rank-3
// recipe runs in complex floating point and the result is polished by
// Gauss-Newton on all four terms.
#include <Eigen/Dense>
#include <cmath>

#include "atlas_internal.hpp"

namespace skewrank {

namespace {

using cd = std::complex<double>;
using Dense = std::vector<cd>;  // indexed by mask

Dense cwedge(const Dense& a, const Dense& b) {
  Dense out(a.size());
  for (Mask ma = 0; ma < a.size(); ++ma) {
    if (a[ma] == cd(0)) continue;
    for (Mask mb = 0; mb < b.size(); ++mb) {
      if (b[mb] == cd(0) || (ma & mb)) continue;
      cd x = a[ma] * b[mb];
      out[ma | mb] += wedge_sign(ma, mb) > 0 ? x : -x;
    }
  }
  return out;
}

/// x . t for a dual vector x.
Dense chook(const std::vector<cd>& x, const Dense& t) {
  Dense out(t.size());
  for (Mask m = 0; m < t.size(); ++m) {
    if (t[m] == cd(0)) continue;
    for (size_t a = 0; a < x.size(); ++a) {
      Mask bit = Mask{1} << a;
      if (!(m & bit) || x[a] == cd(0)) continue;
      cd v = x[a] * t[m];
      out[m & ~bit] += (popcount(m & (bit - 1)) % 2) ? -v : v;
    }
  }
  return out;
}

Dense cvector(const std::vector<cd>& v) {
  Dense out(std::size_t{1} << v.size());
  for (size_t i = 0; i < v.size(); ++i) out[Mask{1} << i] = v[i];
  return out;
}

double norm2(const Dense& d) {
  double s = 0;
  for (const auto& x : d) s += std::norm(x);
  return std::sqrt(s);
}

/// Right null vectors (columns of V for the k smallest singular values).
std::vector<std::vector<cd>> null_vectors(const Eigen::MatrixXcd& M, size_t k) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const Eigen::MatrixXcd& V = svd.matrixV();
  std::vector<std::vector<cd>> out;
  for (Eigen::Index c = V.cols() - static_cast<Eigen::Index>(k); c < V.cols(); ++c) {
    std::vector<cd> v(static_cast<size_t>(V.rows()));
    for (Eigen::Index r = 0; r < V.rows(); ++r) v[static_cast<size_t>(r)] = V(r, c);
    out.push_back(v);
  }
  return out;
}

Dense wedge3(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c) {
  return cwedge(cwedge(cvector(a), cvector(b)), cvector(c));
}

using Terms = std::vector<std::array<std::vector<cd>, 3>>;

/// Two-term split of a rank-2 trivector in 6 variables (orbit V) in floating point.
std::optional<Terms> numeric_split6(const Dense& R, double tol) {
  Eigen::MatrixXcd T(6, 6);
  const Mask full = detail::full_mask(6);
  for (size_t x = 0; x < 6; ++x) {
    std::vector<cd> ex(6);
    ex[x] = 1;
    Dense five = cwedge(chook(ex, R), R);
    for (size_t y = 0; y < 6; ++y) {
      Mask rest = full & ~(Mask{1} << y);
      cd c = five[rest];
      T(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = wedge_sign(Mask{1} << y, rest) < 0 ? -c : c;
    }
  }
  cd q = (T * T).trace();
  double scale = std::pow(norm2(R), 4);
  if (std::abs(q) < tol * scale) return std::nullopt;
  cd mu = std::sqrt(q / 6.0);
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(6, 6);
  auto Eplus = null_vectors(T - mu * I, 3), Eminus = null_vectors(T + mu * I, 3);
  auto rows_of = [](const std::vector<std::vector<cd>>& vs) {
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(vs.size()), 6);
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = 0; j < 6; ++j) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vs[i][j];
    return M;
  };
  auto U1 = null_vectors(rows_of(Eminus), 3), U2 = null_vectors(rows_of(Eplus), 3);
  Dense A = wedge3(U1[0], U1[1], U1[2]), B = wedge3(U2[0], U2[1], U2[2]);
  Eigen::MatrixXcd sys(20, 2);
  Eigen::VectorXcd rhs(20);
  const auto& basis = lex_basis(6, 3);
  for (size_t q3 = 0; q3 < basis.size(); ++q3) {
    sys(static_cast<Eigen::Index>(q3), 0) = A[basis[q3]];
    sys(static_cast<Eigen::Index>(q3), 1) = B[basis[q3]];
    rhs(static_cast<Eigen::Index>(q3)) = R[basis[q3]];
  }
  Eigen::VectorXcd ab = sys.colPivHouseholderQr().solve(rhs);
  Terms out;
  std::array<std::vector<cd>, 3> t1 = {U1[0], U1[1], U1[2]}, t2 = {U2[0], U2[1], U2[2]};
  for (auto& x : t1[0]) x *= ab(0);
  for (auto& x : t2[0]) x *= ab(1);
  out.push_back(t1);
  out.push_back(t2);
  return out;
}

/// Three-term decomposition of a point of the rank-3 locus (orbit IX) in 7 variables.
std::optional<Terms> numeric_rank3(const Dense& u, double tol, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  auto crand = [&] { return cd(gauss(rng), gauss(rng)); };
  auto B = detail::dense_b_matrix(u);
  Eigen::MatrixXcd Bm(7, 7);
  for (size_t i = 0; i < 7; ++i)
    for (size_t j = 0; j < 7; ++j) Bm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = B[i][j];
  auto K = null_vectors(Bm, 3);
  std::vector<Dense> om;
  for (const auto& k : K) om.push_back(chook(k, u));
  // Conic: the rows of the 35 x 6 monomial matrix are proportional.
  const auto& b4 = lex_basis(7, 4);
  Eigen::MatrixXcd C(35, 6);
  int col = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j, ++col) {
      Dense q = cwedge(om[static_cast<size_t>(i)], om[static_cast<size_t>(j)]);
      for (size_t r = 0; r < b4.size(); ++r)
        C(static_cast<Eigen::Index>(r), col) = (i == j ? 1.0 : 2.0) * q[b4[r]];
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeFullV);
  Eigen::VectorXcd conic = svd.matrixV().col(0).conjugate();
  auto Q = [&](const std::array<cd, 3>& z) {
    cd s = 0;
    int c2 = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j, ++c2) s += conic(c2) * z[static_cast<size_t>(i)] * z[static_cast<size_t>(j)];
    return s;
  };
  std::array<cd, 3> za{crand(), crand(), crand()}, zb{crand(), crand(), crand()};
  auto at = [&](cd tau) {
    return std::array<cd, 3>{za[0] + tau * zb[0], za[1] + tau * zb[1], za[2] + tau * zb[2]};
  };
  cd c0 = Q(at(0)), c1 = Q(at(1)), cm = Q(at(-1.0));
  cd qa = (c1 + cm) / 2.0 - c0, qb = (c1 - cm) / 2.0;
  if (std::abs(qa) < 1e-14) return std::nullopt;
  cd tau = (-qb + std::sqrt(qb * qb - 4.0 * qa * c0)) / (2.0 * qa);
  auto z = at(tau);
  std::vector<cd> x1(7);
  for (size_t i = 0; i < 3; ++i)
    for (size_t a = 0; a < 7; ++a) x1[a] += z[i] * K[i][a];
  Dense omega = chook(x1, u);
  size_t j = 0;
  for (size_t a = 1; a < 7; ++a)
    if (std::abs(x1[a]) > std::abs(x1[j])) j = a;
  std::vector<cd> gamma(7);
  gamma[j] = 1.0 / x1[j];
  std::vector<size_t> keep;
  for (size_t a = 0; a < 7; ++a)
    if (a != j) keep.push_back(a);
  auto kvec = [&](const std::vector<cd>& y) {
    std::vector<cd> v(7);
    for (size_t i = 0; i < 6; ++i) {
      v[keep[i]] += y[i];
      v[j] -= y[i] * x1[keep[i]] / x1[j];
    }
    return v;
  };
  auto project = [&](const Dense& R) {
    Dense out(64);
    for (Mask m = 0; m < R.size(); ++m) {
      if ((m >> j & 1) || R[m] == cd(0)) continue;
      Mask mm = 0;
      for (size_t q = 0; q < 6; ++q)
        if (m >> keep[q] & 1) mm |= Mask{1} << q;
      out[mm] = R[m];
    }
    return out;
  };
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<cd> y(6);
    if (attempt > 0)
      for (auto& v : y) v = crand();
    std::vector<cd> g = gamma, kv = kvec(y);
    for (size_t a = 0; a < 7; ++a) g[a] += kv[a];
    Dense gw = cwedge(cvector(g), omega);
    Dense R(u.size());
    for (size_t m = 0; m < u.size(); ++m) R[m] = u[m] - gw[m];
    auto split = numeric_split6(project(R), tol);
    if (!split) continue;
    Terms out;
    // omega = row_i ^ row_k / omega_ik for the largest entry.
    Mask best = 0;
    for (Mask m : lex_basis(7, 2))
      if (best == 0 || std::abs(omega[m]) > std::abs(omega[best])) best = m;
    auto ik = mask_indices(best);
    auto row = [&](int i) {
      std::vector<cd> r(7);
      for (int b = 0; b < 7; ++b) {
        if (b == i) continue;
        Mask m = (Mask{1} << i) | (Mask{1} << b);
        r[static_cast<size_t>(b)] = i < b ? omega[m] : -omega[m];
      }
      return r;
    };
    std::array<std::vector<cd>, 3> first = {g, row(ik[0]), row(ik[1])};
    for (auto& v : first[0]) v /= omega[best];
    out.push_back(first);
    for (const auto& term : *split) {
      std::array<std::vector<cd>, 3> lifted;
      for (size_t s = 0; s < 3; ++s) lifted[s] = kvec(term[s]);
      out.push_back(lifted);
    }
    return out;
  }
  return std::nullopt;
}

/// Gauss-Newton with minimum-norm steps on sum of wedges = target.
double polish(Terms& terms, const Dense& target, double tol) {
  const size_t n = 7, nt = terms.size();
  const auto& b3 = lex_basis(7, 3);
  double tn = norm2(target);
  auto residual = [&]() {
    Eigen::VectorXcd F(35);
    Dense sum(target.size());
    for (const auto& t : terms) {
      Dense w = wedge3(t[0], t[1], t[2]);
      for (size_t m = 0; m < sum.size(); ++m) sum[m] += w[m];
    }
    for (size_t r = 0; r < b3.size(); ++r) F(static_cast<Eigen::Index>(r)) = sum[b3[r]] - target[b3[r]];
    return F;
  };
  Eigen::VectorXcd F = residual();
  double rel = F.norm() / tn;
  for (int it = 0; it < 60 && rel > tol * 1e-3; ++it) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(35, static_cast<Eigen::Index>(nt * 3 * n));
    for (size_t t = 0; t < nt; ++t)
      for (size_t s = 0; s < 3; ++s) {
        const auto& p = terms[t][(s + 1) % 3];
        const auto& q = terms[t][(s + 2) % 3];
        // v_s ^ v_{s+1} ^ v_{s+2} is a cyclic shift of the term, hence equal.
        for (size_t r = 0; r < b3.size(); ++r) {
          Mask S = b3[r];
          for (size_t a = 0; a < n; ++a) {
            Mask bit = Mask{1} << a;
            if (!(S & bit)) continue;
            auto bc = mask_indices(S & ~bit);
            cd pq = p[static_cast<size_t>(bc[0])] * q[static_cast<size_t>(bc[1])] -
                    p[static_cast<size_t>(bc[1])] * q[static_cast<size_t>(bc[0])];
            J(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>((t * 3 + s) * n + a)) =
                wedge_sign(bit, S & ~bit) > 0 ? pq : -pq;
          }
        }
      }
    Eigen::VectorXcd delta = J.completeOrthogonalDecomposition().solve(-F);
    for (size_t t = 0; t < nt; ++t)
      for (size_t s = 0; s < 3; ++s)
        for (size_t a = 0; a < n; ++a) terms[t][s][a] += delta(static_cast<Eigen::Index>((t * 3 + s) * n + a));
    Eigen::VectorXcd F2 = residual();
    double rel2 = F2.norm() / tn;
    if (rel2 >= rel) break;
    F = F2;
    rel = rel2;
  }
  return rel;
}

}  // namespace

Decomposition rank4_decompose7(const Multivector& t, uint64_t seed, double tolerance, int retry_budget) {
  if (t.degree() != 3 || t.dual()) throw ContractViolation("rank4_decompose7 needs a primal trivector");
  EssentialSpace es = essential_space(t);
  if (es.dim() != 7) throw ContractViolation("rank4_decompose7 needs 7 essential variables");
  const Multivector& r = es.reduced;
  if (determinant(b_matrix(r)).is_zero()) throw ContractViolation("rank4_decompose7 needs det B != 0");
  const bool rational = detail::field_of(r) == 1;
  Dense target(128);
  for (const auto& [m, c] : r.terms()) target[m] = c.to_complex();
  std::string diag;
  if (!rational) retry_budget = 0, diag = "the line search needs rational input";
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    auto rng = detail::make_rng(seed, static_cast<uint64_t>(attempt) + 1);
    std::uniform_int_distribution<int> dist(-3, 3);
    std::vector<Vec> w(3, Vec(7));
    for (auto& v : w)
      for (auto& x : v) x = dist(rng);
    Multivector W = wedge_vectors(w);
    if (W.is_zero()) continue;
    Poly g = poly_squarefree(detB_line_polynomial(r, W));
    // Exact path: a rational point of the line on the rank-3 locus.
    for (const auto& s0 : rational_roots(g)) {
      Multivector u = r + Scalar(s0) * W;
      if (u.is_zero()) continue;
      Classification sub = classify7(u, ClassifyOptions{seed, tolerance, true, retry_budget});
      if (!sub.decomposition || !sub.decomposition->available || sub.decomposition->numeric) continue;
      Decomposition dec = *sub.decomposition;
      dec.terms.push_back(Term{Scalar(mpq_class(-s0)), w});
      detail::refresh_field(dec);
      if (dec.size() == 4 && dec.expand() == r) return detail::lift_decomposition(dec, es);
    }
    // Numeric path.
    Dense Wd(128);
    for (const auto& [m, c] : W.terms()) Wd[m] = c.to_complex();
    auto roots = complex_roots(g);
    for (const auto& s : roots) {
      Dense u(128);
      for (size_t m = 0; m < 128; ++m) u[m] = target[m] + s * Wd[m];
      auto terms = numeric_rank3(u, tolerance, rng);
      if (!terms) continue;
      std::array<std::vector<cd>, 3> wt;
      for (size_t i = 0; i < 3; ++i) {
        wt[i].resize(7);
        for (size_t a = 0; a < 7; ++a) wt[i][a] = w[i][a].to_complex();
      }
      for (auto& x : wt[0]) x *= -s;
      terms->push_back(wt);
      double rel = polish(*terms, target, tolerance);
      if (!(rel < tolerance)) {
        diag = "numeric residual " + std::to_string(rel) + " above tolerance";
        continue;
      }
      Decomposition dec;
      dec.dim = 7;
      dec.numeric = true;
      for (const auto& term : *terms) dec.numeric_terms.push_back(NumericTerm{{term[0], term[1], term[2]}});
      return detail::lift_decomposition(dec, es);
    }
  }
  Decomposition fail;
  fail.dim = t.dim();
  fail.available = false;
  fail.diagnostic = "rank-4 decomposition not found within the retry budget" + (diag.empty() ? "" : ": " + diag);
  return fail;
}

}  // namespace skewrank
