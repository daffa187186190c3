// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "skewrank/atlas.hpp"

using namespace skewrank;
using L = OrbitLabel;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;     // printed regardless of outcome
  std::vector<std::string> failures;  // first few failure messages

  void fail(const std::string& msg) {
    pass = false;
    if (failures.size() < 6) failures.push_back(msg);
  }
  void expect(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int id, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (dt > budget_s) {
    std::ostringstream s;
    s << "runtime " << dt << " s exceeds " << budget_s << " s";
    o.fail(s.str());
  }
  std::printf("criterion %d: %s (%.2f s)\n", id, o.pass ? "PASS" : "FAIL", dt);
  for (const auto& n : o.notes) std::printf("    note: %s\n", n.c_str());
  for (const auto& f : o.failures) std::printf("    fail: %s\n", f.c_str());
  std::fflush(stdout);
  return o.pass;
}

std::string str(L l) { return to_string(l); }

Multivector dual_basis(int n, std::initializer_list<std::pair<std::vector<int>, int>> terms) {
  Multivector h(n, static_cast<int>(terms.begin()->first.size()), true);
  for (const auto& [idx, c] : terms) h += Multivector::basis(n, idx, true, Scalar(c));
  return h;
}

Subspace span_dense(const std::vector<Multivector>& hs) {
  std::vector<Vec> rows;
  for (const auto& h : hs) rows.push_back(h.dense());
  return Subspace::span(rows, rows[0].size());
}

Multivector random_rank_one(std::mt19937_64& rng, int n, int d, std::vector<Vec>* factors = nullptr) {
  std::vector<Vec> vs;
  for (int i = 0; i < d; ++i) vs.push_back(oracle::to_vec(oracle::random_vec(rng, n)));
  if (factors) *factors = vs;
  return wedge_vectors(vs);
}

std::string degrees_str(const std::vector<int>& ds) {
  std::string s = "{";
  for (size_t i = 0; i < ds.size(); ++i) s += (i ? "," : "") + std::to_string(ds[i]);
  return s + "}";
}

/// dim of {h in wedge^s V* : h . t_i = 0 for all i}, via oracle contraction and elimination.
size_t oracle_ideal_dim(const std::vector<oracle::Ten>& pts, int n, int d, int s) {
  std::vector<std::vector<mpq_class>> cols;
  for (Mask m : lex_basis(n, s)) {
    std::vector<mpq_class> col;
    for (const auto& p : pts) {
      auto img = oracle::contract({{mask_indices(m), mpq_class(1)}}, p);
      for (Mask r : lex_basis(n, d - s)) {
        auto it = img.find(mask_indices(r));
        col.push_back(it == img.end() ? mpq_class(0) : it->second);
      }
    }
    cols.push_back(col);
  }
  return cols.size() - oracle::rank(cols);
}

// ---------------------------------------------------------------- criteria

void criterion1(Outcome& o) {
  // f0f1f2 + f0f3f4 + f1f3f5 in wedge^3 C^6
  auto v = Multivector::basis(6, {0, 1, 2}) + Multivector::basis(6, {0, 3, 4}) + Multivector::basis(6, {1, 3, 5});
  auto ann = annihilator(v);
  o.expect(ann.pieces[1].dim() == 0, "dim ker C^{1,2} != 0");
  o.expect(ann.pieces[2].dim() == 9, "dim ker C^{2,1} != 9");
  std::vector<Multivector> gens{
      dual_basis(6, {{{0, 2}, 1}, {{3, 5}, 1}}), dual_basis(6, {{{0, 4}, 1}, {{1, 5}, -1}}),
      dual_basis(6, {{{0, 5}, 1}}),              dual_basis(6, {{{1, 2}, 1}, {{3, 4}, -1}}),
      dual_basis(6, {{{1, 4}, 1}}),              dual_basis(6, {{{2, 3}, 1}}),
      dual_basis(6, {{{2, 4}, 1}}),              dual_basis(6, {{{2, 5}, 1}}),
      dual_basis(6, {{{4, 5}, 1}})};
  Subspace listed = span_dense(gens);
  Subspace computed = kernel(catalecticant(v, 2).M);
  o.expect(listed.dim() == 9, "listed generators are dependent");
  o.expect(computed.basis() == listed.basis(), "echelon form of ker C^{2,1} differs from the listed span");
  o.expect(ann.pieces[2] == listed, "annihilator degree-2 piece differs from the listed span");
  for (const auto& g : gens) o.expect(contract(g, v).is_zero(), "a listed generator does not annihilate v");
  auto c = classify6(v);
  o.expect(c.labels == std::vector<L>{L::IV}, "classify6 label is not IV");
  o.expect(c.rank == 3, "classify6 rank is not 3");
  o.expect(c.decomposition && verify_decomposition(v, *c.decomposition).ok, "classify6 decomposition fails");
}

void criterion2(Outcome& o) {
  const std::vector<std::pair<L, size_t>> rows{{L::II, 1}, {L::III, 2}, {L::IV, 3}, {L::V, 2}};
  for (auto [l, ssr] : rows) {
    int good = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
      auto t = orbit_sample(l, seed);
      auto c = classify6(t, ClassifyOptions{seed});
      std::string tag = str(l) + " seed " + std::to_string(seed) + ": ";
      if (c.labels != std::vector<L>{l}) {
        o.fail(tag + "wrong label");
        continue;
      }
      if (!c.decomposition || !c.decomposition->available || c.decomposition->numeric) {
        o.fail(tag + "no exact decomposition");
        continue;
      }
      auto rep = verify_decomposition(t, *c.decomposition);
      if (!rep.exact || !rep.ok || rep.terms != ssr || !rep.all_terms_decomposable) {
        o.fail(tag + "decomposition check failed");
        continue;
      }
      ++good;
    }
    o.notes.push_back(str(l) + ": " + std::to_string(good) + "/100");
  }
}

void criterion3(Outcome& o) {
  const std::map<L, long> expected_count{{L::VI, -1}, {L::VII, 1}, {L::VIII, 2}, {L::IX, 0}};
  for (auto l : all_labels()) {
    if (info(l).ambient > 7) continue;
    int labels = 0, detb = 0, counts = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
      auto t = orbit_sample(l, seed, 7);
      std::string tag = str(l) + " seed " + std::to_string(seed) + ": ";
      auto c = classify(t, ClassifyOptions{seed, 1e-9, false});
      if (c.labels == std::vector<L>{l}) ++labels; else o.fail(tag + "wrong label");
      bool zero = detB(t).is_zero();
      if (zero == (l != L::X)) ++detb; else o.fail(tag + "detB pattern");
      auto it = expected_count.find(l);
      if (it != expected_count.end()) {
        long c5 = decomposable_l_count(t, 5), c7 = decomposable_l_count(t, 7);
        if (c5 == c7 && c5 == it->second) ++counts;
        else o.fail(tag + "GF(5)/GF(7) counts " + std::to_string(c5) + "/" + std::to_string(c7));
      }
    }
    std::string note = str(l) + ": labels " + std::to_string(labels) + "/50, detB " + std::to_string(detb) + "/50";
    if (expected_count.count(l)) note += ", counts " + std::to_string(counts) + "/50";
    o.notes.push_back(note);
  }
}

void criterion4(Outcome& o) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::map<int, int> hist;
  for (uint64_t i = 0; i < 20; ++i) {
    auto t = orbit_sample(L::X, 100 + i, 7);
    Multivector w(7, 3);
    for (Mask m : lex_basis(7, 3)) w.add_term(m, Scalar(coef(rng)));
    Poly f = detB_line_polynomial(t, w);
    int deg = poly_degree(poly_squarefree(f));
    ++hist[deg];
    o.expect(deg == 7, "line " + std::to_string(i) + ": square-free degree " + std::to_string(deg));
    o.expect(poly_degree(f) <= 21, "line polynomial degree above 21");
  }
  std::string h;
  for (auto [d, n] : hist) h += " deg" + std::to_string(d) + "x" + std::to_string(n);
  o.notes.push_back("square-free degrees:" + h);
}

void criterion5(Outcome& o) {
  auto t = embed(normal_form(L::X), 7);
  int exact = 0, numeric = 0;
  double worst = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto d = rank4_decompose7(t, seed);
    auto rep = verify_decomposition(t, d, 1e-9);
    std::string tag = "seed " + std::to_string(seed) + ": ";
    o.expect(d.available, tag + "unavailable");
    o.expect(d.size() == 4, tag + "term count " + std::to_string(d.size()));
    o.expect(rep.ok, tag + "verification failed");
    if (rep.exact) ++exact; else ++numeric;
    worst = std::max(worst, rep.residual);
  }
  std::ostringstream s;
  s << exact << " exact, " << numeric << " numeric, worst relative residual " << worst;
  o.notes.push_back(s.str());
}

void criterion6(Outcome& o) {
  const std::vector<std::pair<L, size_t>> explicit_rows{{L::XII, 4},  {L::XIV, 4}, {L::XV, 5},
                                                        {L::XVIII, 4}, {L::XX, 4}, {L::XXII, 4}};
  for (auto [l, n] : explicit_rows) {
    auto d = standard_decomposition(l);
    auto rep = verify_decomposition(normal_form(l), d);
    o.expect(rep.exact && rep.ok, str(l) + ": SD does not expand to the normal form");
    o.expect(rep.terms == n, str(l) + ": term count");
  }
  // The XX row as usually printed carries -t in the last factor; the catalog
  // stores the corrected row, and the literal one is reported here.
  auto literal = parse_letter_decomposition("(r+s)(t-r)b + (r+s)(r+p)(c-q) + (a-r-s)qp + r(b-c)(s-p-t)");
  o.notes.push_back("printed XX row r(b-c)(s-p-t) leaves residual " +
                    (literal.expand() - normal_form(L::XX)).str() + "; corrected row r(b-c)(s-p+t) is used");
  for (auto l : all_labels()) {
    auto d = standard_decomposition(l, 17);
    o.expect(static_cast<int>(d.size()) == info(l).rank, str(l) + ": term count differs from the rank column");
    for (const auto& term : d.terms) {
      auto e = term.expand();
      o.expect(!e.is_zero() && is_decomposable(e).has_value(), str(l) + ": non-decomposable term");
    }
  }
}

void criterion7(Outcome& o) {
  for (auto l : all_labels()) {
    if (info(l).ambient != 8) continue;
    const int want = (l == L::XV) ? 5 : (l == L::XVI || l == L::XIX) ? 3 : 4;
    int ok = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
      auto t = orbit_sample(l, seed);
      auto c = classify8(t, ClassifyOptions{seed});
      std::string tag = str(l) + " seed " + std::to_string(seed) + ": ";
      bool good = std::find(c.labels.begin(), c.labels.end(), l) != c.labels.end();
      if (!good) o.fail(tag + "label not in candidate set");
      if (c.rank != want) {
        o.fail(tag + "rank");
        good = false;
      }
      if (want == 3) {
        bool dec = c.decomposition && c.decomposition->available && !c.decomposition->numeric &&
                   c.decomposition->size() == 3 && verify_decomposition(t, *c.decomposition).ok;
        if (!dec) {
          o.fail(tag + "no exact 3-term decomposition");
          good = false;
        }
      }
      ok += good;
    }
    o.notes.push_back(str(l) + ": " + std::to_string(ok) + "/50 (rank " + std::to_string(want) + ")");
  }
}

void criterion8(Outcome& o) {
  auto blk = [](int n, std::vector<int> idx) { return Multivector::basis(n, idx); };
  auto sums = [](int n, std::vector<std::vector<int>> cols) {
    std::vector<Vec> vs;
    for (const auto& c : cols) {
      Vec v(static_cast<size_t>(n));
      for (int i : c) v[static_cast<size_t>(i)] = Scalar(1);
      vs.push_back(v);
    }
    return wedge_vectors(vs);
  };
  auto check = [&](const std::string& name, const std::vector<Multivector>& pts, std::vector<int> want) {
    auto r = point_ideal(pts);
    auto got = r.generator_degrees();
    std::string counts;
    for (size_t s = 0; s < r.generator_counts.size(); ++s)
      if (r.generator_counts[s]) counts += " " + std::to_string(r.generator_counts[s]) + "@deg" + std::to_string(s);
    o.notes.push_back(name + ": degrees " + degrees_str(got) + " (expected " + degrees_str(want) + "), generators" +
                      counts);
    o.expect(got == want, name + ": generator degrees " + degrees_str(got) + " != " + degrees_str(want));
    return r;
  };

  // n = 3, d = 2, four points
  auto v3 = sums(4, {{0, 2}, {1, 3}}), v4 = sums(4, {{0, 3}, {1, 2}});
  check("n=3 d=2 (v1,v2)", {blk(4, {0, 1}), blk(4, {2, 3})}, {2});
  check("n=3 d=2 (v1,v2,v3)", {blk(4, {0, 1}), blk(4, {2, 3}), v3}, {2});
  auto r4 = check("n=3 d=2 (v1..v4)", {blk(4, {0, 1}), blk(4, {2, 3}), v3, v4}, {2});
  o.expect(r4.pieces[2] == span_dense({dual_basis(4, {{{0, 2}, 1}, {{1, 3}, 1}}),
                                       dual_basis(4, {{{0, 3}, 1}, {{1, 2}, 1}})}),
           "n=3 d=2 four points: degree-2 piece differs from the printed generators");

  // n = 5, d = 4, four points
  auto w4 = sums(6, {{0, 2}, {1, 3}, {0, 4}, {1, 5}});
  check("n=5 d=4 (v1,v2)", {blk(6, {0, 1, 2, 3}), blk(6, {0, 1, 4, 5})}, {2});
  check("n=5 d=4 (v1,v2,v3)", {blk(6, {0, 1, 2, 3}), blk(6, {0, 1, 4, 5}), blk(6, {2, 3, 4, 5})}, {3});
  auto r54 =
      check("n=5 d=4 (v1..v4)", {blk(6, {0, 1, 2, 3}), blk(6, {0, 1, 4, 5}), blk(6, {2, 3, 4, 5}), w4}, {3, 4});
  o.notes.push_back("FLAG n=5 d=4 four points: computed " + std::to_string(r54.generator_counts[3]) +
                    " cubic and " + std::to_string(r54.generator_counts[4]) +
                    " quartic minimal generators (dim I_3 = " + std::to_string(r54.dims[3]) +
                    ", dim I_4 = " + std::to_string(r54.dims[4]) +
                    "); the prose says two in degree 3 and five in degree 4");
  {
    std::vector<oracle::Ten> pts;
    for (const auto& p : {blk(6, {0, 1, 2, 3}), blk(6, {0, 1, 4, 5}), blk(6, {2, 3, 4, 5}), w4})
      pts.push_back(oracle::from_lib(p));
    o.expect(oracle_ideal_dim(pts, 6, 4, 3) == r54.dims[3] && oracle_ideal_dim(pts, 6, 4, 4) == r54.dims[4],
             "n=5 d=4: oracle ideal dimensions disagree");
  }

  // intersecting planes
  check("three-intersecting d=4 n+1=6", {blk(6, {0, 1, 2, 3}), blk(6, {0, 1, 4, 5}), blk(6, {2, 3, 4, 5})}, {3});
  check("two-intersecting d=3 n+1=5 (d+1=n)", {blk(5, {0, 1, 2}), blk(5, {0, 3, 4})}, {2});
  {
    // d = 4, n + 1 = 7: planes share e0; the statement asks for degrees {2, n+1-d} = {2, 3}
    const int N = 7, d = 4;
    auto a = blk(N, {0, 1, 2, 3}), b = blk(N, {0, 4, 5, 6});
    check("two-intersecting d=4 n+1=7", {a, b}, {2, 3});
    // independent evidence: degree-3 piece equals V* ^ I_2 (oracle), and the
    // stated degree-3 element annihilates a + b but not a
    std::vector<oracle::Ten> pts{oracle::from_lib(a), oracle::from_lib(b)};
    std::vector<oracle::Ten> quad;
    for (int i = 1; i <= 3; ++i)
      for (int j = 4; j <= 6; ++j) quad.push_back({{{i, j}, mpq_class(1)}});
    size_t i2 = oracle_ideal_dim(pts, N, d, 2), i3 = oracle_ideal_dim(pts, N, d, 3);
    std::vector<std::vector<mpq_class>> rows;
    for (int k = 0; k < N; ++k)
      for (const auto& g : quad) {
        auto prod = oracle::wedge({{{k}, mpq_class(1)}}, g);
        std::vector<mpq_class> row;
        for (Mask m : lex_basis(N, 3)) {
          auto it = prod.find(mask_indices(m));
          row.push_back(it == prod.end() ? mpq_class(0) : it->second);
        }
        rows.push_back(row);
      }
    size_t generated3 = oracle::rank(rows);
    oracle::Ten h{{{1, 2, 3}, mpq_class(1)}, {{4, 5, 6}, mpq_class(-1)}};
    oracle::Ten ab = pts[0];
    for (const auto& [k, c] : pts[1]) oracle::add(ab, k, c);
    bool kills_sum = oracle::contract(h, ab).empty(), kills_a = oracle::contract(h, pts[0]).empty();
    o.notes.push_back("two-intersecting d=4 n+1=7 oracle: dim I_2 = " + std::to_string(i2) + ", dim I_3 = " +
                      std::to_string(i3) + ", dim V*^I_2 = " + std::to_string(generated3) +
                      "; e1*e2*e3* - e4*e5*e6* annihilates v1+v2: " + (kills_sum ? "yes" : "no") +
                      ", annihilates v1: " + (kills_a ? "yes" : "no") +
                      " (it lies in the annihilator of the sum, not in the ideal of the points)");
  }

  // r general points with r d <= n + 1
  check("lemma (d,r,n+1)=(3,2,6)", {blk(6, {0, 1, 2}), blk(6, {3, 4, 5})}, {2});
  check("lemma (d,r,n+1)=(2,2,4)", {blk(4, {0, 1}), blk(4, {2, 3})}, {2});
  check("lemma (d,r,n+1)=(3,2,7)", {blk(7, {0, 1, 2}), blk(7, {3, 4, 5})}, {1, 2});
  std::mt19937_64 rng(808);
  check("lemma (3,2,7) random points", {random_rank_one(rng, 7, 3), random_rank_one(rng, 7, 3)}, {1, 2});
}

void criterion9(Outcome& o) {
  std::mt19937_64 rng(909);
  // kernel/image dimensions for rank-one tensors
  int kerimg = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3, n = 5 + (trial / 3) % 4;
    std::vector<Vec> f;
    auto v = random_rank_one(rng, n, d, &f);
    if (v.is_zero()) {
      --trial;
      continue;
    }
    Subspace vspan = Subspace::span(f, static_cast<size_t>(n));
    Subspace vperp = perp(vspan);
    bool good = true;
    auto ann = annihilator(v);
    for (int s = 0; s <= d; ++s) {
      auto C = catalecticant(v, s);
      // kernel = (ideal generated by the perp of the span) in degree s
      std::vector<Multivector> gen;
      if (s >= 1)
        for (const auto& p : vperp.vectors())
          for (Mask m : lex_basis(n, s - 1))
            gen.push_back(wedge(Multivector::vector(p, true), Multivector::basis(n, mask_indices(m), true)));
      Subspace ideal = gen.empty() ? Subspace(binomial(n, s)) : span_dense(gen);
      // image = wedge^{d-s} of the span
      std::vector<Multivector> img;
      for (Mask m : lex_basis(d, d - s)) {
        std::vector<Vec> pick;
        for (int i : mask_indices(m)) pick.push_back(f[static_cast<size_t>(i)]);
        img.push_back(pick.empty() ? Multivector::scalar(n, Scalar(1)) : wedge_vectors(pick));
      }
      good = good && ann.pieces[static_cast<size_t>(s)].dim() == binomial(n, s) - binomial(d, s);
      good = good && ann.pieces[static_cast<size_t>(s)] == ideal;
      good = good && image(C.M) == span_dense(img);
    }
    if (good) ++kerimg; else o.fail("kerimg trial " + std::to_string(trial));
  }
  o.notes.push_back("kerimg: " + std::to_string(kerimg) + "/200");

  // Pluecker relations versus decomposability (oracle: rank of C^{d-1,1})
  int pl = 0, pure = 0;
  std::uniform_int_distribution<int> kind(0, 2), coef(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3, n = 5 + trial % 3;
    Multivector t;
    switch (kind(rng)) {
      case 0: t = random_rank_one(rng, n, d); break;
      case 1: {
        // two planes sharing a (d-1)-space: rank one again
        std::vector<Vec> f;
        random_rank_one(rng, n, d, &f);
        auto g = f;
        g.back() = oracle::to_vec(oracle::random_vec(rng, n));
        t = wedge_vectors(f) + wedge_vectors(g);
        break;
      }
      default: {
        t = Multivector(n, d);
        for (Mask m : lex_basis(n, d))
          if (coef(rng) == 0) t.add_term(m, Scalar(coef(rng)));
      }
    }
    if (t.is_zero()) {
      --trial;
      continue;
    }
    auto ot = oracle::from_lib(t);
    std::vector<std::vector<mpq_class>> rows;
    for (Mask m : lex_basis(n, d - 1)) {
      auto img = oracle::contract({{mask_indices(m), mpq_class(1)}}, ot);
      std::vector<mpq_class> row(static_cast<size_t>(n));
      for (const auto& [k, c] : img) row[static_cast<size_t>(k[0])] = c;
      rows.push_back(row);
    }
    bool dec = oracle::rank(rows) == static_cast<size_t>(d);
    bool plucker = true;
    for (const auto& r : plucker_residuals(t)) plucker = plucker && r.is_zero();
    bool cert = is_decomposable(t).has_value();
    pure += dec;
    if (dec == plucker && dec == cert) ++pl; else o.fail("Pluecker trial " + std::to_string(trial));
  }
  o.notes.push_back("Pluecker/decomposable: " + std::to_string(pl) + "/200 (" + std::to_string(pure) + " decomposable)");

  // composition sign law, checked against the oracle as well
  int comp = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + trial % 3, d = 3 + trial % 2, a = 1 + trial % 2, b = 1 + (trial / 2) % 2;
    auto t = random_rank_one(rng, n, d) + random_rank_one(rng, n, d);
    Multivector h1(n, a, true), h2(n, b, true);
    for (Mask m : lex_basis(n, a)) h1.add_term(m, Scalar(coef(rng)));
    for (Mask m : lex_basis(n, b)) h2.add_term(m, Scalar(coef(rng)));
    auto lhs = contract(wedge(h1, h2), t), rhs = contract(h2, contract(h1, t));
    auto olhs = oracle::contract(oracle::wedge(oracle::from_lib(h1), oracle::from_lib(h2)), oracle::from_lib(t));
    if (lhs == rhs && oracle::from_lib(lhs) == olhs) ++comp; else o.fail("composition trial " + std::to_string(trial));
  }
  o.notes.push_back("composition law: " + std::to_string(comp) + "/200");

  // GL-equivariance of the signature
  int eq = 0, total = 0;
  for (auto l : all_labels()) {
    Signature ref = signature(normal_form(l));
    for (uint64_t seed = 0; seed < 20; ++seed) {
      ++total;
      auto s = signature(orbit_sample(l, 500 + seed));
      if (s.same_as(ref)) ++eq; else o.fail(str(l) + " seed " + std::to_string(500 + seed) + ": " + s.str());
    }
  }
  o.notes.push_back("signature equivariance: " + std::to_string(eq) + "/" + std::to_string(total));
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run_criterion(1, 0.1, criterion1);
  failed += !run_criterion(2, 10, criterion2);
  failed += !run_criterion(3, 120, criterion3);
  failed += !run_criterion(4, 30, criterion4);
  failed += !run_criterion(5, 60, criterion5);
  failed += !run_criterion(6, 5, criterion6);
  failed += !run_criterion(7, 300, criterion7);
  failed += !run_criterion(8, 60, criterion8);
  failed += !run_criterion(9, 600, criterion9);
  std::printf(
      "criterion 10: DECLARED not reproducible (projective dimension 10 and degree 2556 of the XXII family "
      "need a Groebner engine; covered by the exact XXII check in criterion 6)\n");
  std::printf("summary: %d of 9 checked criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
