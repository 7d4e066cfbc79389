#pragma once

// Sparse integer bivariate polynomials over Z[X,Y].

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certmesh/numeric.hpp"

namespace certmesh {

enum class Var { X, Y };

struct Monomial {
  int i = 0;  // degree in X
  int j = 0;  // degree in Y

  // Graded lexicographic order: total degree first, then the X degree.
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = (a.i + a.j) <=> (b.i + b.j); c != 0) return c;
    return a.i <=> b.i;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct PolyNorms {
  mpz_class height;    // max |coefficient|
  mpz_class one_norm;  // sum |coefficient|
  int total_degree = 0;
  int height_bits = 0;  // smallest L with height < 2^L
};

class Poly {
 public:
  using Terms = std::map<Monomial, mpz_class>;

  Poly() = default;
  explicit Poly(Terms terms);
  static Poly constant(long c);
  static Poly x();
  static Poly y();
  static Poly monomial(mpz_class c, int i, int j);

  // Grammar: integers, x/X, y/Y, + - * ^ and parentheses. Juxtaposition is
  // not multiplication, and non-integer coefficients are rejected.
  static Poly parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(Var v) const;
  // Leading term in graded lexicographic order.
  std::pair<Monomial, mpz_class> leading_term() const;

  Dyadic eval(const Point& p) const;
  Dyadic eval(const Dyadic& x, const Dyadic& y) const { return eval(Point{x, y}); }
  // Box function: Horner in X over Horner-in-Y coefficient intervals.
  Interval eval(const Interval& x, const Interval& y) const;
  Interval eval(const Box& b) const { return eval(b.x(), b.y()); }
  Interval eval(const Rect& r) const { return eval(r.x, r.y); }

  Poly diff(Var v) const;
  PolyNorms norms() const;
  mpz_class content() const;
  Poly primitive_part() const;
  // Primitive with a positive leading coefficient (graded lex).
  Poly normalized() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const mpz_class& c, const Poly& a);
  Poly pow(unsigned n) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void build_dense();

  Terms terms_;
  // rows_[i][j] = coefficient of X^i Y^j, used by the evaluators.
  std::vector<std::vector<Dyadic>> rows_;
};

// Exact division in Z[X,Y]; nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Primitive, sign-normalized gcd via subresultant remainder sequences.
Poly gcd2(const Poly& p, const Poly& q);

// f / gcd(f, f_X, f_Y), primitive and sign-normalized.
Poly sqfree(const Poly& f);

// F = f^2 + f_X^2 + f_Y^2.
Poly aux_F(const Poly& f);

}  // namespace certmesh
