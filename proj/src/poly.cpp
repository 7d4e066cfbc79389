#include "certmesh/poly.hpp"

#include <cctype>
#include <sstream>

#include "certmesh/error.hpp"

namespace certmesh {

Poly::Poly(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
  build_dense();
}

Poly Poly::constant(long c) { return monomial(mpz_class(c), 0, 0); }
Poly Poly::x() { return monomial(mpz_class(1), 1, 0); }
Poly Poly::y() { return monomial(mpz_class(1), 0, 1); }

Poly Poly::monomial(mpz_class c, int i, int j) {
  Terms t;
  t[{i, j}] = std::move(c);
  return Poly(std::move(t));
}

void Poly::build_dense() {
  rows_.clear();
  int dx = -1;
  for (const auto& [m, c] : terms_) dx = std::max(dx, m.i);
  rows_.resize(static_cast<std::size_t>(dx + 1));
  for (const auto& [m, c] : terms_) {
    auto& row = rows_[static_cast<std::size_t>(m.i)];
    if (row.size() <= static_cast<std::size_t>(m.j)) row.resize(static_cast<std::size_t>(m.j + 1));
    row[static_cast<std::size_t>(m.j)] = Dyadic(c, 0);
  }
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i + m.j);
  return d;
}

int Poly::degree_in(Var v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, v == Var::X ? m.i : m.j);
  return d;
}

std::pair<Monomial, mpz_class> Poly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "poly", "zero polynomial has no leading term");
  return *terms_.rbegin();
}

Dyadic Poly::eval(const Point& p) const {
  Dyadic acc;
  for (auto row = rows_.rbegin(); row != rows_.rend(); ++row) {
    Dyadic c;
    for (auto it = row->rbegin(); it != row->rend(); ++it) c = c * p.y + *it;
    acc = acc * p.x + c;
  }
  return acc;
}

Interval Poly::eval(const Interval& x, const Interval& y) const {
  Interval acc{Dyadic()};
  bool first_row = true;
  for (auto row = rows_.rbegin(); row != rows_.rend(); ++row) {
    Interval c{Dyadic()};
    bool first = true;
    for (auto it = row->rbegin(); it != row->rend(); ++it) {
      c = first ? Interval(*it) : c * y + *it;
      first = false;
    }
    acc = first_row ? c : acc * x + c;
    first_row = false;
  }
  return acc;
}

Poly Poly::diff(Var v) const {
  Terms out;
  for (const auto& [m, c] : terms_) {
    const int e = v == Var::X ? m.i : m.j;
    if (e == 0) continue;
    Monomial dm = m;
    (v == Var::X ? dm.i : dm.j) -= 1;
    out[dm] = c * e;
  }
  return Poly(std::move(out));
}

PolyNorms Poly::norms() const {
  if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "poly", "norms of the zero polynomial");
  PolyNorms n;
  for (const auto& [m, c] : terms_) {
    const mpz_class a = abs(c);
    if (a > n.height) n.height = a;
    n.one_norm += a;
  }
  n.total_degree = degree();
  n.height_bits = static_cast<int>(mpz_sizeinbase(n.height.get_mpz_t(), 2));
  return n;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& [m, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return *this;
  const mpz_class g = content();
  Terms out;
  for (const auto& [m, c] : terms_) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    out[m] = q;
  }
  return Poly(std::move(out));
}

Poly Poly::normalized() const {
  Poly p = primitive_part();
  if (!p.is_zero() && sgn(p.leading_term().second) < 0) return -p;
  return p;
}

Poly Poly::operator-() const {
  Terms out;
  for (const auto& [m, c] : terms_) out[m] = -c;
  return Poly(std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly::Terms out = a.terms_;
  for (const auto& [m, c] : b.terms_) out[m] += c;
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly::Terms out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out[{ma.i + mb.i, ma.j + mb.j}] += ca * cb;
  return Poly(std::move(out));
}

Poly operator*(const mpz_class& c, const Poly& a) {
  Poly::Terms out;
  for (const auto& [m, v] : a.terms_) out[m] = c * v;
  return Poly(std::move(out));
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const mpz_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1 && (m.i > 0 || m.j > 0);
    if (!unit) os << a.get_str();
    auto emit = [&](char var, int e, bool need_star) {
      if (e == 0) return;
      if (need_star) os << '*';
      os << var;
      if (e > 1) os << '^' << e;
    };
    emit('x', m.i, !unit);
    emit('y', m.j, !unit || m.i > 0);
  }
  return os.str();
}

Poly aux_F(const Poly& f) {
  const Poly fx = f.diff(Var::X);
  const Poly fy = f.diff(Var::Y);
  return f * f + fx * fx + fy * fy;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, "input",
                "cannot parse polynomial at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    check_no_juxtaposition();
    return base;
  }

  void check_no_juxtaposition() {
    skip_ws();
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(')
        fail("implicit multiplication is not allowed; write '*'");
    }
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      return Poly::x();
    }
    if (c == 'y' || c == 'Y') {
      ++pos_;
      return Poly::y();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/'))
        fail("coefficients must be integers; scale the polynomial to clear denominators "
             "(e.g. 5*y^2 - 5*x^2 + 5*x^3 + 1 instead of y^2 - x^2 + x^3 + 0.2)");
      return Poly::monomial(mpz_class(std::string(text_.substr(start, pos_ - start))), 0, 0);
    }
    if (c == '.') fail("coefficients must be integers; scale the polynomial to clear denominators");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace certmesh
