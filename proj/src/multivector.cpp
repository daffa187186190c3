#include "skewrank/multivector.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace skewrank {

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(__builtin_ctz(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& indices, int dim, int* sign) {
  Mask m = 0;
  int inversions = 0;
  for (size_t i = 0; i < indices.size(); ++i) {
    int v = indices[i];
    if (v < 0 || v >= dim) throw ContractViolation("index out of range");
    if (m & (Mask{1} << v)) throw ContractViolation("repeated index");
    inversions += popcount(m & ~((Mask{2} << v) - 1));
    m |= Mask{1} << v;
  }
  if (sign) *sign = (inversions % 2) ? -1 : 1;
  return m;
}

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
  return r;
}

namespace {
using BasisTable = std::array<std::array<std::vector<Mask>, kMaxDim + 1>, kMaxDim + 1>;

const BasisTable& basis_table() {
  static const BasisTable table = [] {
    BasisTable t;
    for (int n = 0; n <= kMaxDim; ++n) {
      for (Mask m = 0; m < (Mask{1} << n); ++m) t[n][popcount(m)].push_back(m);
      for (int k = 0; k <= n; ++k) std::sort(t[n][k].begin(), t[n][k].end(), LexLess{});
    }
    return t;
  }();
  return table;
}
}  // namespace

const std::vector<Mask>& lex_basis(int n, int k) {
  if (n < 0 || n > kMaxDim || k < 0 || k > n) throw ContractViolation("basis degree out of range");
  return basis_table()[n][k];
}

size_t lex_index(Mask m, int n) {
  const int k = popcount(m);
  size_t r = 0;
  int prev = -1, j = 0;
  for (int i : mask_indices(m)) {
    for (int v = prev + 1; v < i; ++v) r += binomial(n - v - 1, k - j - 1);
    prev = i;
    ++j;
  }
  return r;
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inv = 0;
  for (Mask bb = b; bb; bb &= bb - 1) {
    int j = __builtin_ctz(bb);
    inv += popcount(a & ~((Mask{2} << j) - 1));
  }
  return (inv % 2) ? -1 : 1;
}

int contract_sign(Mask s, Mask t) {
  Mask rest = t & ~s;
  int inv = 0;
  for (Mask ss = s; ss; ss &= ss - 1) {
    int j = __builtin_ctz(ss);
    inv += popcount(rest & ((Mask{1} << j) - 1));
  }
  return (inv % 2) ? -1 : 1;
}

// ---------------------------------------------------------------- Multivector

Multivector::Multivector(int dim, int degree, bool dual) : dim_(dim), degree_(degree), dual_(dual) {
  if (dim < 0 || dim > kMaxDim) throw ContractViolation("ambient dimension must be in [0, 16]");
  if (degree < 0 || degree > dim) throw ContractViolation("degree out of range");
}

Multivector Multivector::basis(int dim, const std::vector<int>& indices, bool dual, const Scalar& c) {
  Multivector r(dim, static_cast<int>(indices.size()), dual);
  int sign = 1;
  Mask m = mask_of(indices, dim, &sign);
  r.add_term(m, sign < 0 ? -c : c);
  return r;
}

Multivector Multivector::vector(const Vec& coords, bool dual) {
  Multivector r(static_cast<int>(coords.size()), 1, dual);
  for (size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) r.terms_[Mask{1} << i] = coords[i];
  return r;
}

Multivector Multivector::scalar(int dim, const Scalar& c, bool dual) {
  Multivector r(dim, 0, dual);
  r.add_term(0, c);
  return r;
}

Multivector Multivector::from_dense(int dim, int degree, bool dual, const Vec& coords) {
  Multivector r(dim, degree, dual);
  const auto& b = lex_basis(dim, degree);
  if (coords.size() != b.size()) throw ContractViolation("dense coordinate length mismatch");
  for (size_t i = 0; i < b.size(); ++i)
    if (!coords[i].is_zero()) r.terms_.emplace(b[i], coords[i]);
  return r;
}

Scalar Multivector::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Multivector::add_term(Mask m, const Scalar& c) {
  if (popcount(m) != degree_ || (dim_ < 32 && (m >> dim_) != 0))
    throw ContractViolation("term does not fit the multivector shape");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Vec Multivector::dense() const {
  Vec v(binomial(dim_, degree_));
  for (const auto& [m, c] : terms_) v[lex_index(m, dim_)] = c;
  return v;
}

Vec Multivector::as_vector() const {
  if (degree_ != 1) throw ContractViolation("as_vector needs a degree-1 element");
  Vec v(static_cast<size_t>(dim_));
  for (const auto& [m, c] : terms_) v[static_cast<size_t>(__builtin_ctz(m))] = c;
  return v;
}

void Multivector::check_compatible(const Multivector& o, const char* what) const {
  if (dim_ != o.dim_ || degree_ != o.degree_ || dual_ != o.dual_)
    throw ContractViolation(std::string("incompatible multivectors in ") + what);
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_compatible(o, "+");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_compatible(o, "-");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Multivector& Multivector::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

bool Multivector::operator==(const Multivector& o) const {
  return dim_ == o.dim_ && degree_ == o.degree_ && dual_ == o.dual_ && terms_ == o.terms_;
}

std::string Multivector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string name;
    for (int i : mask_indices(m)) {
      if (!name.empty()) name += "^";
      name += "e" + std::to_string(i) + (dual_ ? "*" : "");
    }
    std::string coef;
    bool negative = false;
    if (c.is_rational()) {
      mpq_class a = c.a();
      if (sgn(a) < 0) {
        negative = true;
        a = -a;
      }
      coef = a == 1 && !name.empty() ? "" : a.get_str();
    } else {
      coef = "(" + c.str() + ")";
    }
    if (first) {
      os << (negative ? "-" : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    os << coef;
    if (!coef.empty() && !name.empty()) os << "*";
    os << name;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- products

Multivector wedge(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim() || a.dual() != b.dual())
    throw ContractViolation("wedge of multivectors from different spaces");
  if (a.degree() + b.degree() > a.dim()) {
    // Returned at the top degree, which is the closest representable shape.
    return Multivector(a.dim(), a.dim(), a.dual());
  }
  Multivector r(a.dim(), a.degree() + b.degree(), a.dual());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      r.add_term(ma | mb, s < 0 ? -c : c);
    }
  return r;
}

Multivector wedge_vectors(const std::vector<Vec>& vectors, bool dual) {
  if (vectors.empty()) throw ContractViolation("wedge of an empty list");
  Multivector r = Multivector::vector(vectors[0], dual);
  for (size_t i = 1; i < vectors.size(); ++i) r = wedge(r, Multivector::vector(vectors[i], dual));
  return r;
}

Multivector contract(const Multivector& h, const Multivector& v) {
  if (h.dim() != v.dim()) throw ContractViolation("contraction across different ambient spaces");
  if (h.dual() == v.dual()) throw ContractViolation("contraction needs opposite flags");
  if (h.degree() > v.degree()) throw ContractViolation("contraction degree exceeds target degree");
  Multivector r(v.dim(), v.degree() - h.degree(), v.dual());
  for (const auto& [ms, cs] : h.terms())
    for (const auto& [mt, ct] : v.terms()) {
      if ((ms & mt) != ms) continue;
      Scalar c = cs * ct;
      r.add_term(mt & ~ms, contract_sign(ms, mt) < 0 ? -c : c);
    }
  return r;
}

Scalar pair(const Multivector& h, const Multivector& v) {
  if (h.degree() != v.degree()) throw ContractViolation("pairing needs equal degrees");
  return contract(h, v).coeff(0);
}

Scalar top_pairing_scalar(const Multivector& a, const Multivector& b) {
  if (a.degree() + b.degree() != a.dim()) throw ContractViolation("degrees are not complementary");
  return wedge(a, b).coeff(a.dim() == 32 ? ~Mask{0} : (Mask{1} << a.dim()) - 1);
}

CatalecticantMatrix catalecticant(const Multivector& t, int s) {
  if (s < 0 || s > t.degree()) throw ContractViolation("catalecticant degree out of range");
  CatalecticantMatrix cm;
  cm.s = s;
  cm.d = t.degree();
  cm.dim = t.dim();
  cm.row_basis = lex_basis(t.dim(), t.degree() - s);
  cm.col_basis = lex_basis(t.dim(), s);
  cm.M = Matrix(cm.row_basis.size(), cm.col_basis.size());
  const int n = t.dim();
  for (size_t j = 0; j < cm.col_basis.size(); ++j) {
    const Mask ms = cm.col_basis[j];
    for (const auto& [mt, ct] : t.terms()) {
      if ((ms & mt) != ms) continue;
      size_t i = lex_index(mt & ~ms, n);
      cm.M(i, j) = contract_sign(ms, mt) < 0 ? -ct : ct;
    }
  }
  return cm;
}

Multivector change_basis(const Multivector& t, const Matrix& g) {
  const size_t n = static_cast<size_t>(t.dim());
  if (g.rows() != n || g.cols() != n) throw ContractViolation("change of basis has the wrong size");
  Matrix a = t.dual() ? inverse(g).transpose() : g;
  Multivector r(t.dim(), t.degree(), t.dual());
  if (t.degree() == 0) return t;
  for (const auto& [m, c] : t.terms()) {
    std::vector<Vec> cols;
    for (int i : mask_indices(m)) cols.push_back(a.col(static_cast<size_t>(i)));
    r += c * wedge_vectors(cols, t.dual());
  }
  return r;
}

}  // namespace skewrank
