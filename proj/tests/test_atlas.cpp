#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "skewrank/atlas.hpp"

using namespace skewrank;

namespace {

bool has_label(const Classification& c, OrbitLabel l) {
  return std::find(c.labels.begin(), c.labels.end(), l) != c.labels.end();
}

/// Independent expansion of an exact decomposition through the oracle algebra.
oracle::Ten oracle_expand(const Decomposition& d) {
  oracle::Ten sum;
  for (const auto& term : d.terms) {
    std::vector<std::vector<mpq_class>> vs;
    for (const auto& v : term.vectors) {
      std::vector<mpq_class> row;
      for (const auto& x : v) {
        REQUIRE(x.is_rational());
        row.push_back(x.a());
      }
      vs.push_back(row);
    }
    for (const auto& [k, c] : oracle::wedge_vectors(vs, d.dim)) oracle::add(sum, k, c * term.coeff.a());
  }
  return sum;
}

bool rational_dec(const Decomposition& d) {
  return d.available && !d.numeric && d.field_D == 1;
}

}  // namespace

TEST_CASE("catalog covers II..XXIII with the rank column") {
  CHECK(all_labels().size() == 22);
  CHECK(info(OrbitLabel::II).rank == 1);
  CHECK(info(OrbitLabel::V).rank == 2);
  CHECK(info(OrbitLabel::X).rank == 4);
  CHECK(info(OrbitLabel::XV).rank == 5);
  CHECK(info(OrbitLabel::XVI).rank == 3);
  CHECK(parse_label("xiv") == OrbitLabel::XIV);
  CHECK_THROWS_AS(parse_label("XXIV"), std::invalid_argument);
  for (auto l : all_labels()) {
    auto nf = normal_form(l);
    CHECK(nf.degree() == 3);
    CHECK(nf.dim() == info(l).ambient);
    CHECK(essential_space(nf).dim() == static_cast<size_t>(info(l).ambient));
  }
}

TEST_CASE("letter decompositions parse with the abcpqrst map") {
  auto d = parse_letter_decomposition("abc + 1/2 (a-s)qp");
  REQUIRE(d.terms.size() == 2);
  auto t = d.expand();
  CHECK(t.coeff(mask_of({0, 1, 2}, t.dim())) == Scalar(1));
  CHECK(oracle::from_lib(t) == oracle_expand(d));
}

TEST_CASE("normal forms classify to their own label") {
  for (auto l : all_labels()) {
    CAPTURE(to_string(l));
    auto c = classify(normal_form(l), ClassifyOptions{0, 1e-9, false, 12});
    CHECK(has_label(c, l));
  }
}

TEST_CASE("standard decompositions: decomposable terms, count = rank column") {
  for (auto l : all_labels()) {
    CAPTURE(to_string(l));
    auto d = standard_decomposition(l, 3);
    CHECK(static_cast<int>(d.size()) == info(l).rank);
    auto rep = verify_decomposition(d.expand(), d);
    CHECK(rep.ok);
    CHECK(rep.all_terms_decomposable);
  }
}

TEST_CASE("explicit table rows expand exactly to the normal form") {
  using L = OrbitLabel;
  for (auto [l, n] : std::vector<std::pair<L, size_t>>{
           {L::XII, 4}, {L::XIV, 4}, {L::XV, 5}, {L::XVIII, 4}, {L::XX, 4}, {L::XXII, 4}}) {
    CAPTURE(to_string(l));
    auto d = standard_decomposition(l);
    REQUIRE(d.size() == n);
    CHECK(oracle_expand(d) == oracle::from_lib(normal_form(l)));
  }
}

TEST_CASE("orbit VII: table rank 3 versus computed rank 4") {
  auto nf = normal_form(OrbitLabel::VII);
  auto c = classify7(nf);
  REQUIRE(c.labels == std::vector<OrbitLabel>{OrbitLabel::VII});
  CHECK(info(OrbitLabel::VII).rank == 3);
  CHECK(c.rank == 4);
  CHECK(c.note.find("rank 4") != std::string::npos);
  REQUIRE(c.decomposition.has_value());
  REQUIRE(rational_dec(*c.decomposition));
  CHECK(c.decomposition->size() == 4);
  CHECK(oracle_expand(*c.decomposition) == oracle::from_lib(nf));
  // the generic SD row for VII lands in orbit VIII
  auto sd = standard_decomposition(OrbitLabel::VII, 5);
  auto csd = classify(sd.expand(), ClassifyOptions{0, 1e-9, false, 12});
  CHECK(csd.labels == std::vector<OrbitLabel>{OrbitLabel::VIII});
}

TEST_CASE("six-variable invariants") {
  auto iv = normal_form(OrbitLabel::IV), v = normal_form(OrbitLabel::V);
  CHECK(split_invariant(iv).is_zero());
  CHECK(split_invariant(v) == Scalar(6));
  CHECK(wedge_square_class(v).is_zero());
  auto T = split_endomorphism(iv);
  auto T6 = T * T * T * T * T * T;
  CHECK(T6.is_zero());
}

TEST_CASE("detB zero pattern and domain") {
  for (auto l : all_labels()) {
    if (info(l).ambient > 7) continue;
    auto t = embed(normal_form(l), 7);
    CAPTURE(to_string(l));
    CHECK(detB(t).is_zero() == (l != OrbitLabel::X));
  }
  CHECK_THROWS(detB(normal_form(OrbitLabel::XXIII)));
}

TEST_CASE("decomposable-l counts at small primes") {
  auto cnt = [](OrbitLabel l, uint32_t p) { return decomposable_l_count(orbit_sample(l, 7, 7), p); };
  CHECK(cnt(OrbitLabel::VI, 5) == -1);
  CHECK(cnt(OrbitLabel::VII, 5) == 1);
  CHECK(cnt(OrbitLabel::VIII, 7) == 2);
  CHECK(cnt(OrbitLabel::IX, 7) == 0);
}

TEST_CASE("classifier preconditions") {
  CHECK_THROWS_AS(classify6(normal_form(OrbitLabel::X)), WrongClassifier);
  CHECK_THROWS_AS(classify7(normal_form(OrbitLabel::XV)), WrongClassifier);
  CHECK_THROWS(classify(Multivector(7, 3)));
  Multivector nine(9, 3);
  nine += Multivector::basis(9, {0, 1, 2}) + Multivector::basis(9, {3, 4, 5}) + Multivector::basis(9, {6, 7, 8}) +
          Multivector::basis(9, {0, 3, 6}) + Multivector::basis(9, {1, 4, 7}) + Multivector::basis(9, {2, 5, 8});
  CHECK_THROWS_AS(classify(nine), UnsupportedDimension);
  CHECK_THROWS(rank4_decompose7(embed(normal_form(OrbitLabel::IX), 7)));
}

TEST_CASE("orbit samples classify equivariantly (small sweep)") {
  for (auto l : all_labels()) {
    CAPTURE(to_string(l));
    for (uint64_t seed = 0; seed < 2; ++seed) {
      auto t = orbit_sample(l, seed);
      auto c = classify(t, ClassifyOptions{seed, 1e-9, false, 12});
      CHECK(has_label(c, l));
    }
  }
}

TEST_CASE("rank-4 decomposition of a rank-3 presentation plus a random point") {
  std::mt19937_64 rng(51);
  auto pres = Multivector::basis(7, {0, 1, 2}) + Multivector::basis(7, {3, 4, 5}) +
              wedge_vectors({Vec{0, 0, 0, 0, 0, 0, 1}, Vec{1, 0, 0, 1, 0, 0, 0}, Vec{0, 1, 0, 0, 1, 0, 0}});
  std::vector<Vec> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(oracle::to_vec(oracle::random_vec(rng, 7)));
  auto t = pres + wedge_vectors(vs);
  if (detB(t).is_zero()) return;
  auto d = rank4_decompose7(t, 1);
  CHECK(d.size() == 4);
  CHECK(verify_decomposition(t, d).ok);
}

TEST_CASE("verify reports a wrong decomposition") {
  auto t = normal_form(OrbitLabel::XII);
  auto d = standard_decomposition(OrbitLabel::XII);
  CHECK(verify_decomposition(t, d).ok);
  d.terms[0].coeff = d.terms[0].coeff + Scalar(1);
  auto rep = verify_decomposition(t, d);
  CHECK_FALSE(rep.ok);
  CHECK(rep.residual > 0);
}

TEST_CASE("eight-variable structural decompositions") {
  auto xv = classify8(normal_form(OrbitLabel::XV));
  CHECK(xv.rank == 5);
  auto xxiii = classify8(normal_form(OrbitLabel::XXIII));
  CHECK(xxiii.rank == 4);
  auto xvi = classify8(orbit_sample(OrbitLabel::XVI, 4));
  CHECK(xvi.rank == 3);
  REQUIRE(xvi.decomposition.has_value());
  REQUIRE(xvi.decomposition->available);
  CHECK(xvi.decomposition->size() == 3);
  CHECK(verify_decomposition(orbit_sample(OrbitLabel::XVI, 4), *xvi.decomposition).ok);
}

TEST_CASE("signature table round trip and collisions") {
  const auto& tab = signature_table();
  CHECK(tab.entries.size() == 13);
  auto back = SignatureTable::from_json(tab.to_json());
  CHECK(back.entries.size() == tab.entries.size());
  auto inv = rank_invariants8(normal_form(OrbitLabel::XIII));
  auto m = tab.match(inv);
  CHECK(m == std::vector<OrbitLabel>{OrbitLabel::XIII, OrbitLabel::XXI});
  auto c = classify8(normal_form(OrbitLabel::XXI));
  CHECK(c.labels.size() == 2);
  CHECK(c.rank == 4);
}

TEST_CASE("batch classification keeps input order") {
  std::vector<Multivector> in{normal_form(OrbitLabel::V), normal_form(OrbitLabel::II), normal_form(OrbitLabel::VIII)};
  auto out = classify_batch(in, ClassifyOptions{}, 2);
  REQUIRE(out.size() == 3);
  CHECK(out[0].labels[0] == OrbitLabel::V);
  CHECK(out[1].labels[0] == OrbitLabel::II);
  CHECK(out[2].labels[0] == OrbitLabel::VIII);
}
