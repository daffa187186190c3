#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracle.hpp"
#include "skewrank/apolarity.hpp"

using namespace skewrank;

namespace {

/// dim ker C^{s,d-s}, computed entirely through the oracle.
size_t oracle_kernel_dim(const oracle::Ten& t, int n, int d, int s) {
  std::vector<std::vector<mpq_class>> cols;
  const auto& rows = lex_basis(n, d - s);
  for (Mask m : lex_basis(n, s)) {
    oracle::Ten h{{mask_indices(m), mpq_class(1)}};
    auto img = oracle::contract(h, t);
    std::vector<mpq_class> col;
    for (Mask r : rows) {
      auto it = img.find(mask_indices(r));
      col.push_back(it == img.end() ? mpq_class(0) : it->second);
    }
    cols.push_back(col);
  }
  return cols.size() - oracle::rank(cols);
}

Multivector random_rank_one(std::mt19937_64& rng, int n, int d) {
  std::vector<Vec> vs;
  for (int i = 0; i < d; ++i) vs.push_back(oracle::to_vec(oracle::random_vec(rng, n)));
  return wedge_vectors(vs);
}

Multivector dual_sum(int n, std::initializer_list<std::pair<std::vector<int>, int>> terms) {
  Multivector h(n, 2, true);
  for (const auto& [idx, c] : terms) h += Multivector::basis(n, idx, true, Scalar(c));
  return h;
}

Subspace span_of(const std::vector<Multivector>& hs) {
  std::vector<Vec> rows;
  for (const auto& h : hs) rows.push_back(h.dense());
  return Subspace::span(rows, rows.empty() ? 0 : rows[0].size());
}

}  // namespace

TEST_CASE("annihilator pieces match oracle kernel dimensions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 5 + trial % 3, d = 2 + trial % 2;
    Multivector t = random_rank_one(rng, n, d) + random_rank_one(rng, n, d);
    auto ann = annihilator(t);
    REQUIRE(ann.pieces.size() == static_cast<size_t>(d + 1));
    for (int s = 0; s <= d; ++s) {
      CHECK(ann.pieces[static_cast<size_t>(s)].dim() == oracle_kernel_dim(oracle::from_lib(t), n, d, s));
      for (const auto& h : ann.basis(s)) CHECK(contract(h, t).is_zero());
    }
  }
}

TEST_CASE("kernel/image dimensions of a rank-one tensor") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 5 + trial % 4, d = 2 + trial % 3;
    auto v = random_rank_one(rng, n, d);
    if (v.is_zero()) continue;
    for (int s = 0; s <= d; ++s) {
      auto C = catalecticant(v, s);
      CHECK(rank(C.M) == binomial(d, s));
      CHECK(annihilator(v).pieces[static_cast<size_t>(s)].dim() == binomial(n, s) - binomial(d, s));
    }
  }
}

TEST_CASE("essential space recovers the hidden subspace") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 8, k = 6;
    std::vector<Vec> basis;
    for (int i = 0; i < k; ++i) basis.push_back(oracle::to_vec(oracle::random_vec(rng, n)));
    Subspace W = Subspace::span(basis, n);
    if (W.dim() != k) continue;
    // generic trivector in the span of the chosen vectors
    Multivector t(n, 3);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        for (int e = b + 1; e < k; ++e) t += Scalar(c(rng)) * wedge_vectors({basis[a], basis[b], basis[e]});
    auto es = essential_space(t);
    CHECK(es.dim() == 6);
    CHECK(es.W == W);
    CHECK(es.lift(es.reduced) == t);
  }
  auto three = Multivector::basis(6, {0, 1, 2});
  CHECK(essential_space(three).dim() == 3);
}

TEST_CASE("apolarity lemma: t in the span of points iff I_d kills t") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6, d = 2;
    std::vector<Multivector> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(random_rank_one(rng, n, d));
    Multivector t = Scalar(2) * pts[0] - Scalar(mpq_class(1, 3)) * pts[2];
    auto res = apolarity_check(t, pts);
    REQUIRE(res.apolar);
    Multivector back(n, d);
    for (size_t i = 0; i < pts.size(); ++i) back += res.coefficients[i] * pts[i];
    CHECK(back == t);
    auto rep = point_ideal(pts, -1, t);
    CHECK(rep.condition_ii);
    CHECK(rep.condition_iii);
    Multivector off = t + random_rank_one(rng, n, d);
    CHECK_FALSE(apolarity_check(off, pts).apolar);
    auto rep2 = point_ideal(pts, -1, off);
    CHECK_FALSE(rep2.condition_iii);
  }
}

TEST_CASE("ideal of points: n=3, d=2 worked example generators") {
  auto e = [](int i, int j) { return Multivector::basis(4, {i, j}); };
  auto v1 = e(0, 1), v2 = e(2, 3);
  auto v3 = e(0, 1) + e(0, 3) - e(1, 2) + e(2, 3);
  auto v4 = e(0, 1) + e(0, 2) - e(1, 3) - e(2, 3);
  CHECK(v3 == wedge_vectors({Vec{1, 0, 1, 0}, Vec{0, 1, 0, 1}}));
  CHECK(v4 == wedge_vectors({Vec{1, 0, 0, 1}, Vec{0, 1, 1, 0}}));

  auto r12 = point_ideal({v1, v2});
  CHECK(r12.generator_degrees() == std::vector<int>{2});
  CHECK(r12.pieces[2] == span_of({dual_sum(4, {{{0, 2}, 1}}), dual_sum(4, {{{0, 3}, 1}}),
                                  dual_sum(4, {{{1, 2}, 1}}), dual_sum(4, {{{1, 3}, 1}})}));
  auto r123 = point_ideal({v1, v2, v3});
  CHECK(r123.generator_degrees() == std::vector<int>{2});
  CHECK(r123.pieces[2] == span_of({dual_sum(4, {{{0, 2}, 1}}), dual_sum(4, {{{0, 3}, 1}, {{1, 2}, 1}}),
                                   dual_sum(4, {{{1, 3}, 1}})}));
  auto r1234 = point_ideal({v1, v2, v3, v4});
  CHECK(r1234.generator_degrees() == std::vector<int>{2});
  CHECK(r1234.pieces[2] ==
        span_of({dual_sum(4, {{{0, 2}, 1}, {{1, 3}, 1}}), dual_sum(4, {{{0, 3}, 1}, {{1, 2}, 1}})}));
}

TEST_CASE("ideal of r general coordinate points is generated in degrees 1 and 2") {
  // (d, r, n+1) = (3, 2, 7): one linear form e6*, plus e_i* ^ e_j* across blocks
  auto r = point_ideal({Multivector::basis(7, {0, 1, 2}), Multivector::basis(7, {3, 4, 5})});
  CHECK(r.generator_degrees() == std::vector<int>{1, 2});
  CHECK(r.generator_counts[1] == 1);
  CHECK(r.generator_counts[2] == 9);
  auto r2 = point_ideal({Multivector::basis(6, {0, 1, 2}), Multivector::basis(6, {3, 4, 5})});
  CHECK(r2.generator_degrees() == std::vector<int>{2});
}

TEST_CASE("point ideal pieces are intersections of the single-point kernels") {
  std::mt19937_64 rng(35);
  const int n = 6, d = 3;
  std::vector<Multivector> pts{random_rank_one(rng, n, d), random_rank_one(rng, n, d)};
  auto rep = point_ideal(pts);
  for (int s = 0; s <= d; ++s) {
    auto a = annihilator(pts[0]).pieces[static_cast<size_t>(s)];
    auto b = annihilator(pts[1]).pieces[static_cast<size_t>(s)];
    CHECK(rep.pieces[static_cast<size_t>(s)] == intersect(a, b));
  }
}
