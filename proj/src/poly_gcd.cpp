// gcd, exact division and square-free part for Z[X,Y].
//
// A bivariate polynomial is viewed as a univariate polynomial in a main
// variable whose coefficients live in Z[other]. The gcd runs a subresultant
// remainder sequence over that coefficient ring, with integer content
// extraction handled recursively by the same code over Z.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "certmesh/error.hpp"
#include "certmesh/poly.hpp"

namespace certmesh {
namespace {

template <class R>
using UPoly = std::vector<R>;  // c[k] is the coefficient of t^k; no trailing zeros

using ZPoly = UPoly<mpz_class>;
using ZZPoly = UPoly<ZPoly>;

// --- coefficient ring hooks, overloaded for mpz_class and ZPoly. All of
// them are declared before the generic algorithms: ADL cannot find them for
// std::vector<mpz_class>.

bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
bool is_zero(const ZPoly& a) { return a.empty(); }

template <class R>
R zero_of() {
  return R{};
}
template <>
mpz_class zero_of<mpz_class>() {
  return mpz_class(0);
}

mpz_class ring_one(const mpz_class&) { return 1; }
ZPoly ring_one(const ZPoly&) { return ZPoly{mpz_class(1)}; }

ZPoly operator-(const ZPoly& a);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);

mpz_class exact_div(const mpz_class& a, const mpz_class& b);
ZPoly exact_div(const ZPoly& a, const ZPoly& b);
mpz_class ring_gcd(const mpz_class& a, const mpz_class& b);
ZPoly ring_gcd(const ZPoly& a, const ZPoly& b);
mpz_class unit_normal(const mpz_class& a);
ZPoly unit_normal(const ZPoly& a);
bool leading_negative(const mpz_class& a) { return sgn(a) < 0; }
bool leading_negative(const ZPoly& a) { return !a.empty() && sgn(a.back()) < 0; }

template <class R>
void trim(UPoly<R>& a) {
  while (!a.empty() && is_zero(a.back())) a.pop_back();
}

template <class R>
int deg(const UPoly<R>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class R>
UPoly<R> neg(const UPoly<R>& a) {
  UPoly<R> r = a;
  for (auto& c : r) c = -c;
  return r;
}

template <class R>
UPoly<R> add(const UPoly<R>& a, const UPoly<R>& b) {
  UPoly<R> r(std::max(a.size(), b.size()), zero_of<R>());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = r[k] + a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] = r[k] + b[k];
  trim(r);
  return r;
}

template <class R>
UPoly<R> scale(const R& c, const UPoly<R>& a) {
  UPoly<R> r;
  r.reserve(a.size());
  for (const auto& v : a) r.push_back(c * v);
  trim(r);
  return r;
}

template <class R>
R ring_pow(const R& a, int n) {
  R r = ring_one(a);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

template <class R>
UPoly<R> exact_div_poly(UPoly<R> a, const UPoly<R>& b) {
  if (b.empty()) throw std::logic_error("division by zero polynomial");
  if (a.empty()) return {};
  if (deg(a) < deg(b)) throw std::logic_error("inexact polynomial division in gcd");
  UPoly<R> q(static_cast<std::size_t>(deg(a) - deg(b) + 1), zero_of<R>());
  while (!a.empty() && deg(a) >= deg(b)) {
    const auto shift = static_cast<std::size_t>(deg(a) - deg(b));
    const R c = exact_div(a.back(), b.back());
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = a[k + shift] - c * b[k];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("inexact polynomial division in gcd");
  trim(q);
  return q;
}

template <class R>
UPoly<R> divide_coeffs(const UPoly<R>& a, const R& c) {
  UPoly<R> r;
  r.reserve(a.size());
  for (const auto& v : a) r.push_back(exact_div(v, c));
  return r;
}

template <class R>
R content(const UPoly<R>& a) {
  R g = zero_of<R>();
  for (const auto& c : a) g = ring_gcd(g, c);
  return g;
}

// Primitive part with a positive leading coefficient (recursively).
template <class R>
UPoly<R> primitive(const UPoly<R>& a) {
  if (a.empty()) return a;
  UPoly<R> p = divide_coeffs(a, content(a));
  if (leading_negative(p.back())) p = neg(p);
  return p;
}

// lc(b)^(deg a - deg b + 1) * a  mod  b
template <class R>
UPoly<R> pseudo_rem(UPoly<R> a, const UPoly<R>& b) {
  int e = deg(a) - deg(b) + 1;
  const R& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    const auto shift = static_cast<std::size_t>(deg(a) - deg(b));
    const R la = a.back();
    for (auto& c : a) c = lb * c;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = a[k + shift] - la * b[k];
    trim(a);
    --e;
  }
  if (e > 0 && !a.empty()) a = scale(ring_pow(lb, e), a);
  return a;
}

// gcd in R[t]: primitive with a positive leading coefficient, multiplied by
// the normalized gcd of the contents.
template <class R>
UPoly<R> poly_gcd(UPoly<R> a, UPoly<R> b) {
  trim(a);
  trim(b);
  if (a.empty() && b.empty()) return {};
  if (a.empty()) std::swap(a, b);
  if (b.empty()) return scale(unit_normal(content(a)), primitive(a));
  if (deg(a) < deg(b)) std::swap(a, b);

  const R d = unit_normal(ring_gcd(content(a), content(b)));
  a = primitive(a);
  b = primitive(b);
  R g = ring_one(d);
  R h = ring_one(d);
  for (;;) {
    const int delta = deg(a) - deg(b);
    UPoly<R> r = pseudo_rem(a, b);
    if (r.empty()) break;
    if (deg(r) == 0) {
      b = UPoly<R>{ring_one(d)};
      break;
    }
    a = std::move(b);
    b = divide_coeffs(r, R(g * ring_pow(h, delta)));
    g = a.back();
    if (delta > 0) h = exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
  }
  return scale(d, primitive(b));
}

ZPoly operator-(const ZPoly& a) { return neg(a); }
ZPoly operator-(const ZPoly& a, const ZPoly& b) { return add(a, neg(b)); }
ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw std::logic_error("inexact integer division in gcd");
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

ZPoly exact_div(const ZPoly& a, const ZPoly& b) { return exact_div_poly(a, b); }

mpz_class ring_gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

ZPoly ring_gcd(const ZPoly& a, const ZPoly& b) { return poly_gcd(a, b); }

mpz_class unit_normal(const mpz_class& a) { return abs(a); }
ZPoly unit_normal(const ZPoly& a) { return leading_negative(a) ? neg(a) : a; }

// --- conversion between Poly and nested dense form

ZZPoly to_nested(const Poly& p, Var main) {
  ZZPoly out;
  for (const auto& [m, c] : p.terms()) {
    const int outer = main == Var::X ? m.i : m.j;
    const int inner = main == Var::X ? m.j : m.i;
    if (out.size() <= static_cast<std::size_t>(outer)) out.resize(static_cast<std::size_t>(outer + 1));
    auto& row = out[static_cast<std::size_t>(outer)];
    if (row.size() <= static_cast<std::size_t>(inner))
      row.resize(static_cast<std::size_t>(inner + 1), mpz_class(0));
    row[static_cast<std::size_t>(inner)] = c;
  }
  for (auto& row : out) trim(row);
  trim(out);
  return out;
}

Poly from_nested(const ZZPoly& p, Var main) {
  Poly::Terms t;
  for (std::size_t outer = 0; outer < p.size(); ++outer)
    for (std::size_t inner = 0; inner < p[outer].size(); ++inner) {
      const auto& c = p[outer][inner];
      if (sgn(c) == 0) continue;
      const int o = static_cast<int>(outer);
      const int n = static_cast<int>(inner);
      t[main == Var::X ? Monomial{o, n} : Monomial{n, o}] = c;
    }
  return Poly(std::move(t));
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "poly", "division by the zero polynomial");
  const auto [lm, lc] = b.leading_term();
  Poly rem = a;
  Poly::Terms quotient;
  // Graded lex is a monomial order and {b} is a Groebner basis of (b), so
  // the remainder vanishes exactly when b divides a.
  while (!rem.is_zero()) {
    const auto [rm, rc] = rem.leading_term();
    if (rm.i < lm.i || rm.j < lm.j) return std::nullopt;
    if (!mpz_divisible_p(rc.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), rc.get_mpz_t(), lc.get_mpz_t());
    const Poly step = Poly::monomial(q, rm.i - lm.i, rm.j - lm.j);
    quotient[{rm.i - lm.i, rm.j - lm.j}] += q;
    rem = rem - step * b;
  }
  return Poly(std::move(quotient));
}

Poly gcd2(const Poly& p, const Poly& q) {
  if (p.is_zero() && q.is_zero())
    throw Error(ErrorKind::ZeroPolynomial, "poly", "gcd of two zero polynomials");
  if (q.is_zero()) return p.normalized();
  if (p.is_zero()) return q.normalized();
  const int dx = std::max(p.degree_in(Var::X), q.degree_in(Var::X));
  const int dy = std::max(p.degree_in(Var::Y), q.degree_in(Var::Y));
  const Var main = dx <= dy ? Var::X : Var::Y;
  const ZZPoly g = poly_gcd(to_nested(p, main), to_nested(q, main));
  return from_nested(g, main).normalized();
}

Poly sqfree(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "poly", "square-free part of the zero polynomial");
  Poly g = gcd2(f, f.diff(Var::X));
  g = gcd2(g, f.diff(Var::Y));
  auto q = divide_exact(f, g);
  if (!q) throw std::logic_error("gcd does not divide its argument");
  return q->normalized();
}

}  // namespace certmesh
