// Orbit labels, normal forms, the table's decompositions and random samples.
#include <algorithm>
#include <cctype>
#include <cmath>

#include "atlas_internal.hpp"

namespace skewrank {

namespace {

const std::vector<OrbitInfo>& info_table() {
  static const std::vector<OrbitInfo> table = {
      {OrbitLabel::II, "II", 3, 1},       {OrbitLabel::III, "III", 5, 2},
      {OrbitLabel::IV, "IV", 6, 3},       {OrbitLabel::V, "V", 6, 2},
      {OrbitLabel::VI, "VI", 7, 3},       {OrbitLabel::VII, "VII", 7, 3},
      {OrbitLabel::VIII, "VIII", 7, 3},   {OrbitLabel::IX, "IX", 7, 3},
      {OrbitLabel::X, "X", 7, 4},         {OrbitLabel::XI, "XI", 8, 4},
      {OrbitLabel::XII, "XII", 8, 4},     {OrbitLabel::XIII, "XIII", 8, 4},
      {OrbitLabel::XIV, "XIV", 8, 4},     {OrbitLabel::XV, "XV", 8, 5},
      {OrbitLabel::XVI, "XVI", 8, 3},     {OrbitLabel::XVII, "XVII", 8, 4},
      {OrbitLabel::XVIII, "XVIII", 8, 4}, {OrbitLabel::XIX, "XIX", 8, 3},
      {OrbitLabel::XX, "XX", 8, 4},       {OrbitLabel::XXI, "XXI", 8, 4},
      {OrbitLabel::XXII, "XXII", 8, 4},   {OrbitLabel::XXIII, "XXIII", 8, 4},
  };
  return table;
}

// Normal forms over the letters a,b,c,p,q,r,s,t. IV is handled separately: the
// printed form collapses to five variables, so the Segre form is used instead.
const char* nf_text(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::II: return "qrs";
    case OrbitLabel::III: return "aqp+brp";
    case OrbitLabel::IV: return nullptr;
    case OrbitLabel::V: return "abc+prq";
    case OrbitLabel::VI: return "aqp+brp+csp";
    case OrbitLabel::VII: return "qrs+aqp+brp+csp";
    case OrbitLabel::VIII: return "abc+qrs+aqp";
    case OrbitLabel::IX: return "abc+qrs+aqp+brp";
    case OrbitLabel::X: return "abc+qrs+aqp+brp+csp";
    case OrbitLabel::XI: return "aqp+brp+csp+crt";
    case OrbitLabel::XII: return "qrs+aqp+brp+csp+crt";
    case OrbitLabel::XIII: return "abc+qrs+aqp+crt";
    case OrbitLabel::XIV: return "abc+qrs+aqp+brp+crt";
    case OrbitLabel::XV: return "abc+qrs+aqp+brp+csp+crt";
    case OrbitLabel::XVI: return "aqp+bst+crt";
    case OrbitLabel::XVII: return "aqp+brp+bst+crt";
    case OrbitLabel::XVIII: return "qrs+aqp+brp+bst+crt";
    case OrbitLabel::XIX: return "aqp+brp+csp+bst+crt";
    case OrbitLabel::XX: return "qrs+aqp+brp+csp+bst+crt";
    case OrbitLabel::XXI: return "abc+qrs+aqp+bst";
    case OrbitLabel::XXII: return "abc+qrs+aqp+brp+bst+crt";
    case OrbitLabel::XXIII: return "abc+qrs+aqp+brp+csp+bst+crt";
  }
  return nullptr;
}

// Rows of the table whose decomposition is written in the normal-form basis.
const char* explicit_sd(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::XII: return "(a-s)qp + (q-c)(p+r)s + (t+s)cr + brp";
    case OrbitLabel::XIV: return "ab(c-p) + (a-r)(b+q)p + rq(p-s) + crt";
    case OrbitLabel::XV: return "crt + aqp + (b+s)(r-c)p + (a+p)bc + (p+q)rs";
    case OrbitLabel::XVIII: return "(t-r)bs + crt + r(p-s)(b-q) + (a-r)qp";
    case OrbitLabel::XX:
      // Last factor is (s-p+t); with -t the sum is off by 2(b-c)rt.
      return "(r+s)(t-r)b + (r+s)(r+p)(c-q) + (a-r-s)qp + r(b-c)(s-p+t)";
    case OrbitLabel::XXII:
      return "(a+r)(b+2q)(p-c+1/2s) + cr(t-3b-2q) + bs(1/2a+3/2r+t) + (b+q)(a+2r)(p-2c+s)";
    default: return nullptr;
  }
}

// Generic rows: each term is three symbols among v0..v7, m0..m3, l0..l2 and the
// sums S5 = v0+...+v5, S6 = v0+...+v6.
std::vector<std::vector<std::string>> generic_sd(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::II: return {{"v0", "v1", "v2"}};
    case OrbitLabel::III: return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}};
    case OrbitLabel::IV: return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v1", "v3", "v5"}};
    case OrbitLabel::V: return {{"v0", "v1", "v2"}, {"v3", "v4", "v5"}};
    case OrbitLabel::VI: return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v0", "v5", "v6"}};
    case OrbitLabel::VII: return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v5", "v6", "S6"}};
    case OrbitLabel::VIII: return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v3", "v5", "v6"}};
    case OrbitLabel::IX: return {{"v0", "v1", "v2"}, {"v3", "v4", "v5"}, {"v6", "S5", "m0"}};
    case OrbitLabel::X:
      return {{"v0", "v1", "v2"}, {"v3", "v4", "v5"}, {"v6", "S6", "m0"}, {"m1", "m2", "m3"}};
    case OrbitLabel::XI:
      return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v0", "v5", "v6"}, {"v1", "v3", "v7"}};
    case OrbitLabel::XIII:
    case OrbitLabel::XXI:
      return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v1", "v5", "v6"}, {"v3", "v5", "v7"}};
    case OrbitLabel::XVI: return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v5", "v6", "v7"}};
    case OrbitLabel::XVII:
      return {{"v0", "v1", "v2"}, {"v0", "v3", "v4"}, {"v1", "v3", "v5"}, {"v2", "v6", "v7"}};
    case OrbitLabel::XIX: return {{"v0", "v1", "v2"}, {"v3", "v4", "v5"}, {"v6", "v7", "S5"}};
    case OrbitLabel::XXIII:
      return {{"v0", "v1", "v2"}, {"v3", "v4", "v5"}, {"v6", "v7", "S5"}, {"l0", "l1", "l2"}};
    default: return {};
  }
}

// Letters appearing in a normal form, in the canonical order a,b,c,p,q,r,s,t.
std::string used_letters(const std::string& text) {
  std::string out;
  for (char c : std::string("abcpqrst"))
    if (text.find(c) != std::string::npos) out += c;
  return out;
}

// ---------------------------------------------------------------- letter parser

struct LetterParser {
  const std::string& s;
  const std::string& letters;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse \"" + s + "\" at " + std::to_string(pos) + ": " + why);
  }
  bool is_letter(char c) const { return letters.find(c) != std::string::npos; }

  // Optional rational coefficient "n" or "n/m".
  std::optional<mpq_class> coefficient() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
    std::string num = s.substr(start, pos - start);
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
      size_t d0 = ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == d0) fail("missing denominator");
      den = s.substr(d0, pos - d0);
    }
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
  }

  Vec letter_vector(char c) {
    Vec v(letters.size());
    v[letters.find(c)] = 1;
    return v;
  }

  // linear := [sign] [coef] letter { sign [coef] letter }
  Vec linear() {
    Vec v(letters.size());
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos;
      } else if (!first) {
        break;
      }
      mpq_class k = coefficient().value_or(mpq_class(1));
      char l = peek();
      if (!is_letter(l)) fail("expected a basis letter");
      ++pos;
      v[letters.find(l)] += Scalar(mpq_class(sign * k));
      first = false;
      if (peek() == ')') break;
    }
    return v;
  }

  Vec factor() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Vec v = linear();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return v;
    }
    if (is_letter(c)) {
      ++pos;
      return letter_vector(c);
    }
    fail("expected a factor");
  }

  Decomposition parse() {
    Decomposition dec;
    dec.dim = static_cast<int>(letters.size());
    int sign = 1;
    bool first = true;
    while (!at_end()) {
      char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Term term;
      term.coeff = Scalar(mpq_class(sign * coefficient().value_or(mpq_class(1))));
      while (!at_end() && peek() != '+' && peek() != '-') term.vectors.push_back(factor());
      if (term.vectors.empty()) fail("empty term");
      dec.terms.push_back(std::move(term));
      sign = 1;
      first = false;
    }
    return dec;
  }
};

}  // namespace

const std::vector<OrbitLabel>& all_labels() {
  static const std::vector<OrbitLabel> labels = [] {
    std::vector<OrbitLabel> out;
    for (const auto& i : info_table()) out.push_back(i.label);
    return out;
  }();
  return labels;
}

const OrbitInfo& info(OrbitLabel label) {
  return info_table().at(static_cast<size_t>(static_cast<int>(label) - 2));
}

std::string to_string(OrbitLabel label) { return info(label).name; }

OrbitLabel parse_label(const std::string& text) {
  std::string up;
  for (char c : text) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& i : info_table())
    if (up == i.name) return i.label;
  throw std::invalid_argument("unknown orbit label: " + text);
}

// ---------------------------------------------------------------- decompositions

Multivector Term::expand() const {
  return coeff * wedge_vectors(vectors);
}

Multivector Decomposition::expand() const {
  if (numeric) throw ContractViolation("exact expansion of a numeric decomposition");
  int degree = terms.empty() ? 3 : static_cast<int>(terms[0].vectors.size());
  Multivector out(dim, degree);
  for (const auto& t : terms) out += t.expand();
  return out;
}

Decomposition parse_letter_decomposition(const std::string& text, const std::string& letters) {
  LetterParser p{text, letters};
  return p.parse();
}

Multivector normal_form(OrbitLabel label) {
  if (label == OrbitLabel::IV) {
    Multivector t(6, 3);
    t += Multivector::basis(6, {0, 1, 2});
    t += Multivector::basis(6, {0, 3, 4});
    t += Multivector::basis(6, {1, 3, 5});
    return t;
  }
  std::string text = nf_text(label);
  return parse_letter_decomposition(text, used_letters(text)).expand();
}

Multivector embed(const Multivector& t, int dim) {
  if (dim < t.dim()) throw ContractViolation("cannot embed into a smaller space");
  Multivector out(dim, t.degree(), t.dual());
  for (const auto& [m, c] : t.terms()) out.add_term(m, c);
  return out;
}

Decomposition alternative_decomposition(OrbitLabel label) {
  const char* text = nullptr;
  if (label == OrbitLabel::IX) text = "ab(c-p) + (a-r)(b+q)p + rq(p-s)";
  if (label == OrbitLabel::X) text = "aqp + (b+s)(r-c)p + (a+p)bc + (p+q)rs";
  if (!text) throw std::invalid_argument("no alternative decomposition for " + to_string(label));
  return parse_letter_decomposition(text, used_letters(nf_text(label)));
}

namespace detail {
std::mt19937_64 make_rng(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}
}  // namespace detail

Matrix random_invertible(int dim, uint64_t seed) {
  auto rng = detail::make_rng(seed, 0x9e3779b9u);
  std::uniform_int_distribution<int> dist(-9, 9);
  while (true) {
    Matrix g(static_cast<size_t>(dim), static_cast<size_t>(dim));
    for (size_t i = 0; i < g.rows(); ++i)
      for (size_t j = 0; j < g.cols(); ++j) g(i, j) = dist(rng);
    if (!determinant(g).is_zero()) return g;
  }
}

Multivector orbit_sample(OrbitLabel label, uint64_t seed, int ambient) {
  Multivector nf = normal_form(label);
  int dim = ambient == 0 ? nf.dim() : ambient;
  return change_basis(embed(nf, dim), random_invertible(dim, seed));
}

Decomposition standard_decomposition(OrbitLabel label, uint64_t seed) {
  if (const char* text = explicit_sd(label)) return parse_letter_decomposition(text);
  const int dim = info(label).ambient;
  Matrix g = random_invertible(dim, seed);
  auto rng = detail::make_rng(seed, 0x51ed270bu);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::map<std::string, Vec> sym;
  for (int i = 0; i < dim; ++i) sym["v" + std::to_string(i)] = g.col(static_cast<size_t>(i));
  auto sum_first = [&](int k) {
    Vec s(static_cast<size_t>(dim));
    for (int i = 0; i < k && i < dim; ++i) s = detail::added(s, sym["v" + std::to_string(i)]);
    return s;
  };
  sym["S5"] = sum_first(6);
  sym["S6"] = sum_first(7);
  auto random_combo = [&](int k) {
    Vec s(static_cast<size_t>(dim));
    for (int i = 0; i < k && i < dim; ++i)
      s = detail::added(s, detail::scaled(sym["v" + std::to_string(i)], Scalar(dist(rng))));
    return s;
  };
  for (int i = 0; i < 4; ++i) sym["m" + std::to_string(i)] = random_combo(7);
  for (int i = 0; i < 3; ++i) sym["l" + std::to_string(i)] = random_combo(8);
  Decomposition dec;
  dec.dim = dim;
  for (const auto& row : generic_sd(label)) {
    Term t{Scalar(1), {}};
    for (const auto& name : row) t.vectors.push_back(sym.at(name));
    dec.terms.push_back(std::move(t));
  }
  return dec;
}

namespace detail {

Decomposition lift_decomposition(const Decomposition& dec, const EssentialSpace& es) {
  Decomposition out = dec;
  out.dim = static_cast<int>(es.W.ambient());
  for (auto& term : out.terms)
    for (auto& v : term.vectors) v = es.lift(v);
  for (auto& term : out.numeric_terms)
    for (auto& v : term.vectors) {
      std::vector<std::complex<double>> lifted(es.W.ambient());
      for (size_t r = 0; r < es.dim(); ++r) {
        Vec row = es.W.vector(r);
        for (size_t i = 0; i < lifted.size(); ++i)
          if (!row[i].is_zero()) lifted[i] += v[r] * row[i].to_complex();
      }
      v = std::move(lifted);
    }
  return out;
}

void refresh_field(Decomposition& dec) {
  dec.field_D = 1;
  auto note = [&](const Scalar& x) {
    if (!x.is_rational()) dec.field_D = x.D();
  };
  for (const auto& t : dec.terms) {
    note(t.coeff);
    for (const auto& v : t.vectors)
      for (const auto& x : v) note(x);
  }
}

}  // namespace detail

namespace {
// Dense complex expansion of a numeric decomposition (degree 3 only).
std::vector<std::complex<double>> numeric_expand(const Decomposition& dec) {
  const auto& basis = lex_basis(dec.dim, 3);
  std::vector<std::complex<double>> out(basis.size());
  for (const auto& term : dec.numeric_terms) {
    const auto& u = term.vectors[0];
    const auto& v = term.vectors[1];
    const auto& w = term.vectors[2];
    for (size_t q = 0; q < basis.size(); ++q) {
      auto ix = mask_indices(basis[q]);
      size_t a = static_cast<size_t>(ix[0]), b = static_cast<size_t>(ix[1]), c = static_cast<size_t>(ix[2]);
      out[q] += u[a] * (v[b] * w[c] - v[c] * w[b]) - u[b] * (v[a] * w[c] - v[c] * w[a]) +
                u[c] * (v[a] * w[b] - v[b] * w[a]);
    }
  }
  return out;
}
}  // namespace

VerificationReport verify_decomposition(const Multivector& t, const Decomposition& dec, double tolerance) {
  VerificationReport rep;
  rep.terms = dec.size();
  rep.exact = !dec.numeric;
  if (!dec.available) return rep;
  if (dec.dim != t.dim()) throw ContractViolation("decomposition and tensor live in different spaces");
  if (!dec.numeric) {
    for (const auto& term : dec.terms) {
      if (static_cast<int>(term.vectors.size()) != t.degree()) rep.all_terms_decomposable = false;
      for (const auto& v : term.vectors)
        if (static_cast<int>(v.size()) != t.dim()) rep.all_terms_decomposable = false;
    }
    if (!rep.all_terms_decomposable) return rep;
    Multivector diff = t - dec.expand();
    double num = 0, den = 0;
    for (const auto& [m, c] : diff.terms()) num += std::norm(c.to_complex());
    for (const auto& [m, c] : t.terms()) den += std::norm(c.to_complex());
    rep.residual = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
    rep.ok = diff.is_zero();
    return rep;
  }
  if (t.degree() != 3) throw ContractViolation("numeric decompositions are trivectors");
  for (const auto& term : dec.numeric_terms)
    if (term.vectors.size() != 3) rep.all_terms_decomposable = false;
  if (!rep.all_terms_decomposable) return rep;
  auto approx = numeric_expand(dec);
  Vec exact = t.dense();
  double num = 0, den = 0;
  for (size_t q = 0; q < approx.size(); ++q) {
    std::complex<double> e = exact[q].to_complex();
    num += std::norm(approx[q] - e);
    den += std::norm(e);
  }
  rep.residual = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  rep.ok = rep.residual < tolerance;
  return rep;
}

}  // namespace skewrank
