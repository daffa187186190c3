// Basis-invariant data of trivectors: the split endomorphism in six variables,
// the quadratic form B in seven, finite-field locus counts, rank invariants in
// eight, and the aggregated Signature.
#include <algorithm>
#include <array>
#include <sstream>

#include "atlas_internal.hpp"

namespace skewrank {

namespace detail {
const std::vector<BTriple>& b_triples() {
  static const std::vector<BTriple> table = [] {
    std::vector<BTriple> out;
    const Mask full = full_mask(7);
    for (Mask s1 : lex_basis(7, 2))
      for (Mask s2 : lex_basis(7, 2)) {
        if (s1 & s2) continue;
        Mask s3 = full & ~(s1 | s2);
        out.push_back({s1, s2, s3, wedge_sign(s1, s2) * wedge_sign(s1 | s2, s3)});
      }
    return out;
  }();
  return table;
}
}  // namespace detail

namespace {

void require_trivector(const Multivector& t, const char* what) {
  if (t.degree() != 3 || t.dual())
    throw ContractViolation(std::string(what) + " needs a primal trivector");
}

Multivector hook_basis(const Multivector& t, int a) {
  return detail::hook(detail::unit(static_cast<size_t>(t.dim()), static_cast<size_t>(a)), t);
}

}  // namespace

// ---------------------------------------------------------------- six variables

Matrix split_endomorphism(const Multivector& t) {
  require_trivector(t, "split_endomorphism");
  if (t.dim() != 6) throw ContractViolation("split_endomorphism needs ambient dimension 6");
  Matrix T(6, 6);
  for (int x = 0; x < 6; ++x) {
    Multivector five = wedge(hook_basis(t, x), t);
    // e_y ^ five picks the coefficient of the complementary 5-set.
    for (int y = 0; y < 6; ++y) {
      Mask rest = detail::full_mask(6) & ~(Mask{1} << y);
      Scalar c = five.coeff(rest);
      if (c.is_zero()) continue;
      T(static_cast<size_t>(y), static_cast<size_t>(x)) = wedge_sign(Mask{1} << y, rest) < 0 ? -c : c;
    }
  }
  return T;
}

Scalar split_invariant(const Multivector& t) {
  Matrix T = split_endomorphism(t);
  Matrix T2 = T * T;
  Scalar tr;
  for (size_t i = 0; i < 6; ++i) tr += T2(i, i);
  return tr;
}

Scalar wedge_square_class(const Multivector& t) {
  require_trivector(t, "wedge_square_class");
  return top_pairing_scalar(t, t);
}

// ---------------------------------------------------------------- seven variables

Matrix b_matrix(const Multivector& t) {
  require_trivector(t, "b_matrix");
  if (t.dim() != 7) throw ContractViolation("b_matrix needs ambient dimension 7");
  auto B = detail::dense_b_matrix(detail::dense_by_mask(t));
  Matrix out(7, 7);
  for (size_t i = 0; i < 7; ++i)
    for (size_t j = 0; j < 7; ++j) out(i, j) = B[i][j];
  return out;
}

Scalar detB(const Multivector& t) {
  require_trivector(t, "detB");
  if (t.dim() == 7) return determinant(b_matrix(t));
  EssentialSpace es = essential_space(t);
  if (es.dim() > 7) throw ContractViolation("detB needs at most 7 essential variables");
  return determinant(b_matrix(embed(es.reduced, 7)));
}

Poly detB_line_polynomial(const Multivector& t, const Multivector& w) {
  require_trivector(t, "detB_line_polynomial");
  if (t.dim() != 7 || w.dim() != 7 || w.degree() != 3)
    throw ContractViolation("detB_line_polynomial needs trivectors in dimension 7");
  if (!t.terms().empty() && !(detail::field_of(t) == 1 && detail::field_of(w) == 1))
    throw ContractViolation("detB_line_polynomial needs rational coefficients");
  // Each entry of B is cubic in t, so det B has degree at most 21 along the line.
  std::vector<mpq_class> xs, ys;
  for (int s = 0; s <= 21; ++s) {
    xs.emplace_back(s);
    Scalar d = determinant(b_matrix(t + Scalar(s) * w));
    ys.push_back(d.a());
  }
  Poly f = interpolate(xs, ys);
  poly_trim(f);
  return f;
}

// ---------------------------------------------------------------- finite fields

namespace {

using u32 = uint32_t;
using u64 = uint64_t;

struct ModTensor {
  u32 p = 0;
  int dim = 0;
  std::vector<u32> c;  // indexed by mask
};

Multivector primitive_integral(const Multivector& t) {
  mpz_class den = 1, num = 0;
  for (const auto& [mask, c] : t.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.a().get_den().get_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.a().get_num().get_mpz_t());
  }
  mpq_class scale(den, num);
  scale.canonicalize();
  return Scalar(scale) * t;
}

// Echelon basis, pivots scaled to 1, of the row space of an integer matrix mod p.
std::vector<std::vector<u32>> echelon_mod(ModMatrix m) {
  const u64 p = m.p;
  size_t rk = 0;
  std::vector<std::vector<u32>> out;
  for (size_t col = 0; col < m.cols && rk < m.rows; ++col) {
    size_t piv = m.rows;
    for (size_t i = rk; i < m.rows && piv == m.rows; ++i)
      if (m(i, col)) piv = i;
    if (piv == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rk, j));
    mpz_class inv, v = m(rk, col), pp = m.p;
    mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), pp.get_mpz_t());
    for (size_t j = 0; j < m.cols; ++j) m(rk, j) = static_cast<u32>(m(rk, j) * inv.get_ui() % p);
    for (size_t i = rk + 1; i < m.rows; ++i) {
      u64 f = m(i, col);
      if (!f) continue;
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = static_cast<u32>((m(i, j) + (p - f) * m(rk, j)) % p);
    }
    out.emplace_back(m.data.begin() + static_cast<long>(rk * m.cols), m.data.begin() + static_cast<long>((rk + 1) * m.cols));
    ++rk;
  }
  return out;
}

// An integral model of a rational tensor on Q^n with full essential space, good
// at p when possible. If the essential space E shrinks mod p, t is rewritten in
// a basis of the lattice E + pZ^n (E lifted) and made primitive again. This
// undoes a change of coordinates whose determinant is divisible by p, which is
// how bad reductions of orbit samples arise.
Multivector integral_model(const Multivector& t, u32 p) {
  const size_t n = static_cast<size_t>(t.dim());
  Multivector cur = primitive_integral(t);
  for (int round = 0; round < 6; ++round) {
    auto E = echelon_mod(modp_mirror(catalecticant(cur, 1).M, p));
    if (E.size() == n || E.empty()) return cur;
    Matrix M(n, n);
    std::vector<bool> pivot(n, false);
    size_t col = 0;
    for (const auto& row : E) {
      size_t j = 0;
      while (!row[j]) ++j;
      pivot[j] = true;
      for (size_t i = 0; i < n; ++i) M(i, col) = Scalar(static_cast<long>(row[i]));
      ++col;
    }
    for (size_t j = 0; j < n; ++j)
      if (!pivot[j]) M(j, col++) = Scalar(static_cast<long>(p));
    cur = primitive_integral(change_basis(cur, inverse(M)));
  }
  return cur;
}

// Rational trivector in its essential coordinates, reduced mod p, after the
// good-prime checks. `need` is the required number of essential variables.
ModTensor reduce_essential(const Multivector& t, u32 p, size_t need) {
  require_trivector(t, "finite-field count");
  if (detail::field_of(t) != 1) throw ContractViolation("finite-field counts need rational input");
  EssentialSpace es = essential_space(t);
  if (es.dim() != need)
    throw ContractViolation("finite-field count needs exactly " + std::to_string(need) +
                            " essential variables");
  ModTensor m;
  m.p = p;
  m.dim = static_cast<int>(need);
  m.c.assign(std::size_t{1} << need, 0);
  const Multivector model = integral_model(es.reduced, p);
  for (const auto& [mask, c] : model.terms()) m.c[mask] = reduce_mod(c.a(), p);
  // Good prime: the essential dimension must survive reduction.
  if (rank_mod(modp_mirror(catalecticant(model, 1).M, p)) != need)
    throw BadPrime("essential dimension drops mod " + std::to_string(p));
  return m;
}

// Incremental rank-at-most-r test over GF(p) on rows of fixed width.
class RankBound {
 public:
  RankBound(u32 p, size_t width, size_t bound) : p_(p), width_(width), bound_(bound) {
    rows_.reserve(bound);
  }
  // Adds a row; returns false once the rank exceeds the bound.
  bool add(std::vector<u32> row) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      u32 f = row[piv_[r]];
      if (!f) continue;
      u32 g = p_ - f;
      for (size_t j = 0; j < width_; ++j) row[j] = static_cast<u32>((row[j] + u64(g) * rows_[r][j]) % p_);
    }
    size_t pc = 0;
    while (pc < width_ && row[pc] == 0) ++pc;
    if (pc == width_) return true;
    if (rows_.size() == bound_) return false;
    u32 inv = inverse(row[pc]);
    for (auto& x : row) x = static_cast<u32>(u64(x) * inv % p_);
    rows_.push_back(std::move(row));
    piv_.push_back(pc);
    return true;
  }

 private:
  u32 p_;
  size_t width_, bound_;
  std::vector<std::vector<u32>> rows_;
  std::vector<size_t> piv_;
  u32 inverse(u32 a) const {
    u64 r = 1, b = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }
};

// Contribution t_T * sign to the coordinate S of t mod l, for l = e_k + sum l_i e_i.
struct ChartTerm {
  int i;
  Mask T;
  int sign;
};

// Enumerates the projective points of GF(p)^dim chart by chart: the point is
// e_k + sum_{i>k} x_i e_i. The callback receives k and the full coordinates.
template <class F>
void for_each_projective(int dim, u32 p, F&& f) {
  std::vector<u32> x(static_cast<size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    std::fill(x.begin(), x.end(), 0);
    x[static_cast<size_t>(k)] = 1;
    const int free = dim - k - 1;
    u64 total = 1;
    for (int i = 0; i < free; ++i) total *= p;
    for (u64 idx = 0; idx < total; ++idx) {
      u64 r = idx;
      for (int i = k + 1; i < dim; ++i) {
        x[static_cast<size_t>(i)] = static_cast<u32>(r % p);
        r /= p;
      }
      f(k, x);
    }
  }
}

// Points l of the 7-variable tensor with l ^ t decomposable, or nullopt when
// l -> l ^ t has a kernel mod p.
std::optional<std::vector<std::vector<u32>>> l_locus(const ModTensor& m, bool collect, long* count) {
  const u32 p = m.p;
  const int n = m.dim;
  // Kernel of l -> l ^ t: rows are the coordinates of e_i ^ t.
  {
    ModMatrix mm;
    mm.p = p;
    mm.rows = static_cast<size_t>(n);
    mm.cols = binomial(n, 4);
    mm.data.assign(mm.rows * mm.cols, 0);
    for (int i = 0; i < n; ++i)
      for (Mask s : lex_basis(n, 3)) {
        if (!m.c[s] || (s >> i & 1)) continue;
        int sg = wedge_sign(Mask{1} << i, s);
        mm(static_cast<size_t>(i), lex_index(s | (Mask{1} << i), n)) = sg > 0 ? m.c[s] : p - m.c[s];
      }
    if (rank_mod(mm) < static_cast<size_t>(n)) return std::nullopt;
  }

  // Per chart k: for each 3-set S avoiding k, the terms feeding t mod l.
  std::vector<std::vector<std::pair<Mask, std::vector<ChartTerm>>>> charts(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Mask kb = Mask{1} << k;
    for (Mask S : lex_basis(n, 3)) {
      if (S & kb) continue;
      std::vector<ChartTerm> terms;
      for (int i : mask_indices(S)) {
        if (i <= k) continue;
        Mask rest = S & ~(Mask{1} << i);
        Mask T = rest | kb;
        if (!m.c[T]) continue;
        int sg = -wedge_sign(kb, rest) * wedge_sign(Mask{1} << i, rest);
        terms.push_back({i, T, sg});
      }
      charts[static_cast<size_t>(k)].push_back({S, std::move(terms)});
    }
  }
  const size_t width = binomial(n, 2);
  // Row j of the contraction matrix of t mod l: (source 3-set, column, negate).
  struct RowEntry {
    Mask S;
    size_t col;
    bool neg;
  };
  std::vector<std::vector<RowEntry>> row_entries(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Mask jb = Mask{1} << j;
    for (Mask S : lex_basis(n, 3))
      if (S & jb) row_entries[static_cast<size_t>(j)].push_back({S, lex_index(S & ~jb, n), popcount(S & (jb - 1)) % 2 == 1});
  }
  std::vector<std::vector<u32>> points;
  long found = 0;
  std::vector<u32> bar(std::size_t{1} << n);
  for_each_projective(n, p, [&](int k, const std::vector<u32>& l) {
    std::fill(bar.begin(), bar.end(), 0);
    for (const auto& [S, terms] : charts[static_cast<size_t>(k)]) {
      u64 acc = m.c[S];
      for (const auto& ct : terms) {
        u64 v = u64(l[static_cast<size_t>(ct.i)]) * m.c[ct.T] % p;
        acc += ct.sign > 0 ? v : (p - v) % p;
      }
      bar[S] = static_cast<u32>(acc % p);
    }
    // t mod l is decomposable iff its contractions span at most 3 dimensions.
    RankBound rb(p, width, 3);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      std::vector<u32> row(width, 0);
      bool any = false;
      for (const auto& e : row_entries[static_cast<size_t>(j)]) {
        u32 v = bar[e.S];
        if (!v) continue;
        row[e.col] = e.neg ? p - v : v;
        any = true;
      }
      if (any && !rb.add(std::move(row))) return;
    }
    ++found;
    if (collect) points.push_back(l);
  });
  if (count) *count = found;
  return points;
}

}  // namespace

long decomposable_l_count(const Multivector& t, uint32_t p) {
  // A kernel of l -> l ^ t over Q is one at every prime: report it directly.
  if (detail::field_of(t) == 1) {
    EssentialSpace es = essential_space(t);
    if (es.dim() == 7) {
      std::vector<Multivector> cols;
      for (size_t i = 0; i < 7; ++i) cols.push_back(wedge(Multivector::vector(detail::unit(7, i)), es.reduced));
      if (rank(detail::columns_of(cols)) < 7) return -1;
    }
  }
  ModTensor m = reduce_essential(t, p, 7);
  long count = 0;
  if (!l_locus(m, false, &count)) return -1;
  return count;
}

std::vector<std::vector<uint32_t>> decomposable_l_locus(const Multivector& t, uint32_t p) {
  ModTensor m = reduce_essential(t, p, 7);
  long count = 0;
  auto pts = l_locus(m, true, &count);
  if (!pts) throw ContractViolation("l -> l ^ t has a kernel; the locus is not finite");
  return *pts;
}

long xt_rank2_count(const Multivector& t, uint32_t p) {
  ModTensor m = reduce_essential(t, p, 8);
  const int n = 8;
  // omega(x)_{ij} = sum_a x_a sign * t_{aij}: precompute the linear map.
  struct Lin {
    int a;
    u32 c;
  };
  const auto& pairs = lex_basis(n, 2);
  std::vector<std::vector<Lin>> lin(pairs.size());
  for (size_t q = 0; q < pairs.size(); ++q)
    for (int a = 0; a < n; ++a) {
      Mask ab = Mask{1} << a;
      if (pairs[q] & ab) continue;
      Mask T = pairs[q] | ab;
      if (!m.c[T]) continue;
      u32 v = (popcount(T & (ab - 1)) % 2) ? p - m.c[T] : m.c[T];
      lin[q].push_back({a, v});
    }
  std::array<std::array<int, 8>, 8> pos{};
  for (size_t q = 0; q < pairs.size(); ++q) {
    auto idx = mask_indices(pairs[q]);
    pos[idx[0]][idx[1]] = static_cast<int>(q);
  }
  long count = 0;
  std::vector<u32> w(pairs.size());
  for_each_projective(n, p, [&](int, const std::vector<u32>& x) {
    size_t piv = pairs.size();
    for (size_t q = 0; q < pairs.size(); ++q) {
      u64 acc = 0;
      for (const auto& l : lin[q]) acc += u64(x[static_cast<size_t>(l.a)]) * l.c;
      w[q] = static_cast<u32>(acc % p);
      if (w[q] && piv == pairs.size()) piv = q;
    }
    if (piv == pairs.size()) {
      ++count;
      return;
    }
    // Rank 2 iff every 4x4 Pfaffian through the pivot (a, b) vanishes.
    auto M = [&](int i, int j) -> u64 {
      if (i == j) return 0;
      if (i < j) return w[static_cast<size_t>(pos[i][j])];
      u32 v = w[static_cast<size_t>(pos[j][i])];
      return v ? p - v : 0;
    };
    auto ab = mask_indices(pairs[piv]);
    const int a = ab[0], b = ab[1];
    const u64 mab = M(a, b);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        u64 pf = (mab * M(i, j) + u64(p) * p - M(a, i) * M(b, j) % p + M(a, j) * M(b, i)) % p;
        if (pf) return;
      }
    ++count;
  });
  return count;
}

// ---------------------------------------------------------------- eight variables

std::map<std::string, size_t> rank_invariants8(const Multivector& t) {
  require_trivector(t, "rank_invariants8");
  const int n = t.dim();
  const size_t un = static_cast<size_t>(n);
  std::vector<Multivector> om;
  for (int a = 0; a < n; ++a) om.push_back(hook_basis(t, a));
  std::vector<Multivector> mul2, Q, beta, xtt, cub, R1;
  for (Mask m : lex_basis(n, 2)) mul2.push_back(wedge(Multivector::basis(n, mask_indices(m)), t));
  for (size_t i = 0; i < un; ++i) {
    xtt.push_back(wedge(om[i], t));
    for (size_t j = i; j < un; ++j) {
      Multivector q = wedge(om[i], om[j]);
      beta.push_back(wedge(q, t));
      for (size_t k = j; k < un; ++k) cub.push_back(wedge(q, om[k]));
      Q.push_back(std::move(q));
    }
    for (size_t h = 0; h < un; ++h)
      R1.push_back(wedge(Multivector::vector(detail::unit(un, i)), om[h]));
  }
  return {{"mul2", rank(detail::columns_of(mul2))}, {"Q", rank(detail::columns_of(Q))},
          {"beta", rank(detail::columns_of(beta))}, {"xtt", rank(detail::columns_of(xtt))},
          {"cub", rank(detail::columns_of(cub))},   {"R1", rank(detail::columns_of(R1))}};
}

// ---------------------------------------------------------------- signature

namespace {

// First `want` primes from `candidates` at which the count is defined.
template <class F>
std::vector<std::pair<uint32_t, long>> counts_at_good_primes(const std::vector<uint32_t>& candidates,
                                                             size_t want, F&& count) {
  std::vector<std::pair<uint32_t, long>> out;
  for (uint32_t p : candidates) {
    if (out.size() == want) break;
    try {
      out.emplace_back(p, count(p));
    } catch (const BadPrime&) {
    }
  }
  return out;
}

const std::vector<uint32_t> kPrimes7 = {5, 7, 11, 13, 17, 19, 23};
const std::vector<uint32_t> kPrimes8 = {3, 5, 7, 11, 13};

}  // namespace

Signature signature(const Multivector& t, const SignatureOptions& opts) {
  require_trivector(t, "signature");
  if (t.is_zero()) throw ContractViolation("signature of the zero tensor is undefined");
  Signature sig;
  sig.ambient = t.dim();
  EssentialSpace es = essential_space(t);
  sig.n_essential = es.dim();
  sig.ker12 = kernel(catalecticant(t, 1).M).dim();
  sig.ker21 = kernel(catalecticant(t, 2).M).dim();
  const Multivector& r = es.reduced;
  const bool rational = detail::field_of(t) == 1;
  if (sig.n_essential == 6) {
    sig.split_nonzero = !split_invariant(r).is_zero();
  } else if (sig.n_essential == 7) {
    Matrix B = b_matrix(r);
    sig.rankB = rank(B);
    sig.detB_nonzero = *sig.rankB == 7;
    std::vector<Multivector> cols;
    for (size_t i = 0; i < 7; ++i) cols.push_back(wedge(Multivector::vector(detail::unit(7, i)), r));
    sig.lkernel_dim = 7 - rank(detail::columns_of(cols));
    if (opts.locus_counts && rational)
      sig.locus_counts = counts_at_good_primes(kPrimes7, 2, [&](uint32_t p) { return decomposable_l_count(r, p); });
  } else if (sig.n_essential == 8) {
    sig.aux8 = rank_invariants8(r);
    if (opts.locus_counts && rational)
      sig.locus_counts = counts_at_good_primes(kPrimes8, 2, [&](uint32_t p) { return xt_rank2_count(r, p); });
  }
  return sig;
}

bool Signature::same_as(const Signature& o) const {
  if (ambient != o.ambient || n_essential != o.n_essential || ker12 != o.ker12 || ker21 != o.ker21 ||
      split_nonzero != o.split_nonzero || detB_nonzero != o.detB_nonzero || rankB != o.rankB ||
      lkernel_dim != o.lkernel_dim || aux8 != o.aux8)
    return false;
  for (const auto& [p, c] : locus_counts)
    for (const auto& [q, d] : o.locus_counts)
      if (p == q && c != d) return false;
  return true;
}

std::string Signature::str() const {
  std::ostringstream os;
  os << "ambient:" << ambient << " n_essential:" << n_essential << " ker12:" << ker12
     << " ker21:" << ker21;
  if (split_nonzero) os << " split_nonzero:" << (*split_nonzero ? "true" : "false");
  if (detB_nonzero) os << " detB_nonzero:" << (*detB_nonzero ? "true" : "false");
  if (rankB) os << " rankB:" << *rankB;
  if (lkernel_dim) os << " lkernel_dim:" << *lkernel_dim;
  for (const auto& [k, v] : aux8) os << " " << k << ":" << v;
  for (const auto& [p, c] : locus_counts) {
    os << " count_mod_" << p << ":";
    if (c < 0) os << "kernel";
    else os << c;
  }
  return os.str();
}

}  // namespace skewrank
