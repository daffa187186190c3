#include "skewrank/scalar.hpp"

#include <cctype>
#include <sstream>

namespace skewrank {

mpz_class squarefree_part(const mpz_class& n, mpz_class* root_of_square) {
  if (n == 0) throw FieldError("square-free part of zero");
  mpz_class m = abs(n);
  mpz_class sq = 1;
  mpz_class rest = 1;
  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) sq *= p;
    if (e % 2) rest *= p;
  };
  strip(2);
  for (unsigned long p = 3; p <= 200000; p += 2) {
    if (m == 1) break;
    if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0) break;
    strip(p);
  }
  if (m != 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
      sq *= r;
    } else {
      rest *= m;
    }
  }
  if (root_of_square) *root_of_square = sq;
  return sgn(n) < 0 ? mpz_class(-rest) : rest;
}

Scalar::Scalar(long num, long den) : a_(num, den) { a_.canonicalize(); }

void Scalar::normalize() {
  if (sgn(b_) == 0 || d_ == 1) {
    if (d_ == 1) a_ += b_;  // sqrt(1) = 1
    b_ = 0;
    d_ = 1;
  }
}

Scalar Scalar::quadratic(const mpq_class& a, const mpq_class& b, const mpz_class& D) {
  if (D == 0) throw FieldError("Q(sqrt 0) is not a field");
  Scalar r;
  r.a_ = a;
  mpz_class root;
  r.d_ = squarefree_part(D, &root);
  r.b_ = b * root;
  r.normalize();
  return r;
}

Scalar Scalar::sqrt_of(const mpq_class& q) {
  if (sgn(q) == 0) return Scalar();
  // sqrt(n/d) = sqrt(n*d)/d
  mpz_class nd = q.get_num() * q.get_den();
  mpz_class root;
  mpz_class D = squarefree_part(nd, &root);
  mpq_class coef(root, q.get_den());
  coef.canonicalize();
  if (D == 1) return Scalar(coef);
  Scalar r;
  r.b_ = coef;
  r.d_ = D;
  return r;
}

namespace {
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  return mpq_class(n, d);
}
}  // namespace

std::optional<Scalar> Scalar::sqrt_in_field(const Scalar& x, const mpz_class& D) {
  if (x.is_zero()) return Scalar();
  if (!x.is_rational() && x.D() != D) return std::nullopt;
  if (x.is_rational()) {
    if (auto r = rational_sqrt(x.a())) return Scalar(*r);
    if (D == 1) return std::nullopt;
    // x = D y^2  =>  sqrt(x) = y sqrt(D)
    mpq_class y2 = x.a() / mpq_class(D);
    if (auto y = rational_sqrt(y2)) return Scalar::quadratic(0, *y, D);
    return std::nullopt;
  }
  // (u + v sqrt D)^2 = a + b sqrt D  <=>  u^2 + D v^2 = a, 2uv = b.
  auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (int s : {1, -1}) {
    mpq_class u2 = (x.a() + s * *n) / 2;
    if (sgn(u2) == 0) continue;
    if (auto u = rational_sqrt(u2)) {
      mpq_class v = x.b() / (2 * *u);
      Scalar r = Scalar::quadratic(*u, v, D);
      if (r * r == x) return r;
    }
  }
  return std::nullopt;
}

const mpz_class& Scalar::join(const Scalar& x, const Scalar& y) {
  if (x.is_rational()) return y.d_;
  if (y.is_rational()) return x.d_;
  if (x.d_ != y.d_) throw FieldError("scalars from different quadratic fields");
  return x.d_;
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  r.b_ = -r.b_;
  return r;
}

mpq_class Scalar::norm() const { return a_ * a_ - mpq_class(d_) * b_ * b_; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (is_rational()) return Scalar(mpq_class(1 / a_));
  mpq_class n = norm();
  Scalar r = conj();
  r.a_ /= n;
  r.b_ /= n;
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_rational()) {
    a_ += o.a_;
    return *this;
  }
  d_ = join(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.is_rational()) {
    a_ -= o.a_;
    return *this;
  }
  d_ = join(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.is_rational()) {
    a_ *= o.a_;
    if (!is_rational()) {
      b_ *= o.a_;
      normalize();
    }
    return *this;
  }
  if (is_rational()) {
    mpq_class s = a_;
    a_ = s * o.a_;
    b_ = s * o.b_;
    d_ = o.d_;
    normalize();
    return *this;
  }
  mpz_class d = join(*this, o);
  mpq_class na = a_ * o.a_ + mpq_class(d) * b_ * o.b_;
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw std::domain_error("division by zero scalar");
    a_ /= o.a_;
    if (!is_rational()) b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  return a_ == o.a_ && b_ == o.b_ && (is_rational() || d_ == o.d_);
}

std::string Scalar::str() const {
  if (is_rational()) return a_.get_str();
  std::ostringstream os;
  mpq_class bb = b_;
  bool neg = sgn(bb) < 0;
  if (neg) bb = -bb;
  if (sgn(a_) != 0) {
    os << a_.get_str() << (neg ? "-" : "+");
  } else if (neg) {
    os << "-";
  }
  if (bb != 1) os << bb.get_str();
  os << "√" << d_.get_str();
  return os.str();
}

std::complex<double> Scalar::to_complex() const {
  double a = a_.get_d();
  if (is_rational()) return {a, 0.0};
  double b = b_.get_d();
  double d = d_.get_d();
  if (d >= 0) return {a + b * std::sqrt(d), 0.0};
  return {a, b * std::sqrt(-d)};
}

namespace {
mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("bad rational: " + s);
  }
  std::string t = s;
  if (t[0] == '+') t = t.substr(1);
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}
}  // namespace

Scalar Scalar::parse(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  // Normalize "sqrt(D)" to the radical sign.
  const std::string radical = "√";
  size_t pos = text.find("sqrt(");
  if (pos != std::string::npos) {
    size_t close = text.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("bad scalar: " + raw);
    std::string inner = text.substr(pos + 5, close - pos - 5);
    std::string before = text.substr(0, pos);
    if (!before.empty() && before.back() == '*') before.pop_back();
    text = before + radical + inner + text.substr(close + 1);
  }
  size_t r = text.find(radical);
  if (r == std::string::npos) return Scalar(parse_rational(text));
  mpz_class D;
  std::string dtext = text.substr(r + radical.size());
  if (D.set_str(dtext, 10) != 0) throw std::invalid_argument("bad radicand: " + raw);
  std::string head = text.substr(0, r);
  // Split head into "a" and "b" at the last sign that is not at position 0.
  size_t split = std::string::npos;
  for (size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
      split = i;
      break;
    }
  }
  mpq_class a = 0, b;
  std::string btext = head;
  if (split != std::string::npos) {
    a = parse_rational(head.substr(0, split));
    btext = head.substr(split);
  }
  if (btext.empty() || btext == "+") {
    b = 1;
  } else if (btext == "-") {
    b = -1;
  } else {
    b = parse_rational(btext);
  }
  return Scalar::quadratic(a, b, D);
}

}  // namespace skewrank
