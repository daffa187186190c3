// Independent reference implementations used as test oracles. Nothing here
// calls into the library except the conversion helpers at the bottom.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "skewrank/atlas.hpp"

namespace oracle {

using Key = std::vector<int>;
/// Sparse exterior-algebra element: sorted index tuple -> coefficient.
using Ten = std::map<Key, mpq_class>;

/// Sign of the permutation sorting `seq` (0 if an index repeats).
inline int sort_sign(Key seq) {
  int sign = 1;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) sign = -sign;
    }
  return sign;
}

inline void add(Ten& t, Key k, const mpq_class& c) {
  int s = sort_sign(k);
  if (s == 0 || c == 0) return;
  std::sort(k.begin(), k.end());
  mpq_class& slot = t[k];
  slot += s * c;
  if (slot == 0) t.erase(k);
}

inline Ten wedge(const Ten& a, const Ten& b) {
  Ten out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      Key k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      add(out, k, ca * cb);
    }
  return out;
}

/// Left contraction: e*_S . (e_S ^ e_R) = e_R, extended bilinearly.
inline Ten contract(const Ten& h, const Ten& v) {
  Ten out;
  for (const auto& [ks, cs] : h)
    for (const auto& [kt, ct] : v) {
      if (!std::includes(kt.begin(), kt.end(), ks.begin(), ks.end())) continue;
      Key rest;
      std::set_difference(kt.begin(), kt.end(), ks.begin(), ks.end(), std::back_inserter(rest));
      Key concat = ks;
      concat.insert(concat.end(), rest.begin(), rest.end());
      add(out, rest, sort_sign(concat) * cs * ct);
    }
  return out;
}

/// Leibniz determinant (small sizes only).
inline mpq_class leibniz(const std::vector<std::vector<mpq_class>>& m) {
  const size_t n = m.size();
  Key perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpq_class det = 0;
  do {
    mpq_class prod = sort_sign(perm);
    for (size_t i = 0; i < n && prod != 0; ++i) prod *= m[i][static_cast<size_t>(perm[i])];
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// v1 ^ ... ^ vk via k x k minors.
inline Ten wedge_vectors(const std::vector<std::vector<mpq_class>>& vs, int n) {
  const int k = static_cast<int>(vs.size());
  Ten out;
  std::vector<bool> pick(static_cast<size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    Key cols;
    for (int i = 0; i < n; ++i)
      if (pick[static_cast<size_t>(i)]) cols.push_back(i);
    std::vector<std::vector<mpq_class>> sub(static_cast<size_t>(k));
    for (size_t r = 0; r < sub.size(); ++r)
      for (int c : cols) sub[r].push_back(vs[r][static_cast<size_t>(c)]);
    mpq_class d = leibniz(sub);
    if (d != 0) out[cols] = d;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// Rank by plain Gaussian elimination over Q.
inline size_t rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline mpq_class det(std::vector<std::vector<mpq_class>> m) {
  const size_t n = m.size();
  mpq_class d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      mpq_class f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

inline uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
  return r;
}

// ---------------------------------------------------------------- randomness

inline std::vector<mpq_class> random_vec(std::mt19937_64& rng, int n, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<mpq_class> v(static_cast<size_t>(n));
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::vector<std::vector<mpq_class>> random_matrix(std::mt19937_64& rng, size_t r, size_t c, int lo = -4,
                                                         int hi = 4) {
  std::vector<std::vector<mpq_class>> m(r);
  for (auto& row : m) row = random_vec(rng, static_cast<int>(c), lo, hi);
  return m;
}

// ---------------------------------------------------------------- conversions

inline Ten from_lib(const skewrank::Multivector& t) {
  Ten out;
  for (const auto& [m, c] : t.terms()) out[skewrank::mask_indices(m)] = c.a();
  return out;
}

inline skewrank::Multivector to_lib(const Ten& t, int dim, int degree, bool dual = false) {
  skewrank::Multivector out(dim, degree, dual);
  for (const auto& [k, c] : t) out += skewrank::Multivector::basis(dim, k, dual, skewrank::Scalar(c));
  return out;
}

inline skewrank::Vec to_vec(const std::vector<mpq_class>& v) { return skewrank::Vec(v.begin(), v.end()); }

inline skewrank::Matrix to_matrix(const std::vector<std::vector<mpq_class>>& m) {
  skewrank::Matrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out(i, j) = skewrank::Scalar(m[i][j]);
  return out;
}

}  // namespace oracle
