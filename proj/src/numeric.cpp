#include "certmesh/numeric.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "certmesh/error.hpp"

namespace certmesh {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidRegion: return "InvalidRegion";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::MaxDepthExceeded: return "MaxDepthExceeded";
    case ErrorKind::CardinalityViolation: return "CardinalityViolation";
    case ErrorKind::AlternatingPattern: return "AlternatingPattern";
    case ErrorKind::CollarInterference: return "CollarInterference";
    case ErrorKind::SingularOnBoundary: return "SingularOnBoundary";
    case ErrorKind::OverlappingSingularityNeighborhoods: return "OverlappingSingularityNeighborhoods";
    case ErrorKind::ClosedLoopInAnnulus: return "ClosedLoopInAnnulus";
    case ErrorKind::AmbiguousCell: return "AmbiguousCell";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent) : m_(std::move(mantissa)), e_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (sgn(m_) == 0) {
    e_ = 0;
    return;
  }
  const mp_bitcnt_t tz = mpz_scan1(m_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
    e_ += static_cast<std::int64_t>(tz);
  }
}

namespace {

mpz_class shifted(const mpz_class& m, std::int64_t k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.e_ == b.e_) return Dyadic(a.m_ + b.m_, a.e_);
  if (a.e_ < b.e_) return Dyadic(a.m_ + shifted(b.m_, b.e_ - a.e_), a.e_);
  return Dyadic(shifted(a.m_, a.e_ - b.e_) + b.m_, b.e_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  // Product of odd mantissas is odd, so the result is already canonical.
  Dyadic r;
  r.m_ = a.m_ * b.m_;
  r.e_ = a.e_ + b.e_;
  return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  int c;
  if (a.e_ == b.e_) {
    c = cmp(a.m_, b.m_);
  } else if (a.e_ < b.e_) {
    c = cmp(a.m_, shifted(b.m_, b.e_ - a.e_));
  } else {
    c = cmp(shifted(a.m_, a.e_ - b.e_), b.m_);
  }
  return c <=> 0;
}

std::string Dyadic::to_decimal() const {
  if (e_ >= 0) return shifted(m_, e_).get_str();
  // m * 2^-k = m * 5^k / 10^k
  const auto k = static_cast<unsigned long>(-e_);
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
  mpz_class scaled = ::abs(m_) * five;
  std::string digits = scaled.get_str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  std::string out = sign() < 0 ? "-" : "";
  out += digits.substr(0, digits.size() - k);
  out += '.';
  out += digits.substr(digits.size() - k);
  return out;
}

double Dyadic::to_double() const {
  long exp = 0;
  const double frac = mpz_get_d_2exp(&exp, m_.get_mpz_t());
  return std::ldexp(frac, static_cast<int>(exp + e_));
}

std::size_t Dyadic::hash() const {
  const std::size_t low = mpz_size(m_.get_mpz_t()) ? mpz_getlimbn(m_.get_mpz_t(), 0) : 0;
  return low * 31u + static_cast<std::size_t>(sgn(m_) + 1) * 7u + std::hash<std::int64_t>{}(e_);
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_decimal(); }

namespace {

[[noreturn]] void bad_literal(std::string_view text, const std::string& why) {
  throw Error(ErrorKind::ParseError, "input",
              "invalid dyadic literal '" + std::string(text) + "': " + why);
}

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) bad_literal(whole, "missing digits");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_literal(whole, "unexpected character");
  return mpz_class(std::string(digits));
}

// Returns k if v == 2^k, otherwise -1.
long power_of_two(const mpz_class& v) {
  if (sgn(v) <= 0) return -1;
  const mp_bitcnt_t k = mpz_scan1(v.get_mpz_t(), 0);
  return mpz_sizeinbase(v.get_mpz_t(), 2) == k + 1 ? static_cast<long>(k) : -1;
}

}  // namespace

Dyadic Dyadic::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_literal(text, "empty");
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Dyadic value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    long k = -1;
    if (den_text.starts_with("2^")) {
      const mpz_class e = parse_integer(den_text.substr(2), text);
      if (!e.fits_slong_p()) bad_literal(text, "exponent too large");
      k = e.get_si();
    } else {
      k = power_of_two(parse_integer(den_text, text));
    }
    if (k < 0) bad_literal(text, "denominator is not a power of two");
    value = Dyadic(num, -k);
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    const mpz_class whole = int_part.empty() ? mpz_class(0) : parse_integer(int_part, text);
    const mpz_class frac = frac_part.empty() ? mpz_class(0) : parse_integer(frac_part, text);
    // frac / 10^n is dyadic iff 5^n divides frac.
    const auto n = static_cast<unsigned long>(frac_part.size());
    mpz_class five_n;
    mpz_ui_pow_ui(five_n.get_mpz_t(), 5, n);
    if (!mpz_divisible_p(frac.get_mpz_t(), five_n.get_mpz_t()))
      bad_literal(text, "decimal value is not dyadic");
    value = Dyadic(whole, 0) + Dyadic(frac / five_n, -static_cast<std::int64_t>(n));
  } else {
    value = Dyadic(parse_integer(s, text), 0);
  }
  return negative ? -value : value;
}

Point midpoint(const Point& a, const Point& b) { return {(a.x + b.x).half(), (a.y + b.y).half()}; }

// -------------------------------------------------------------- Interval

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error(ErrorKind::InvalidInput, "numeric", "interval with lo > hi");
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) return {a.lo_ * b.lo_, a.hi_ * b.hi_};
  if (a.hi_.sign() <= 0 && b.hi_.sign() <= 0) return {a.hi_ * b.hi_, a.lo_ * b.lo_};
  const Dyadic p1 = a.lo_ * b.lo_;
  const Dyadic p2 = a.lo_ * b.hi_;
  const Dyadic p3 = a.hi_ * b.lo_;
  const Dyadic p4 = a.hi_ * b.hi_;
  return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

Interval operator*(const Dyadic& s, const Interval& a) {
  if (s.sign() >= 0) return {s * a.lo_, s * a.hi_};
  return {s * a.hi_, s * a.lo_};
}

Interval Interval::pow(unsigned n) const {
  if (n == 0) return Interval(Dyadic(1));
  Dyadic lo_n = 1;
  Dyadic hi_n = 1;
  for (unsigned i = 0; i < n; ++i) {
    lo_n *= lo_;
    hi_n *= hi_;
  }
  if (n % 2 == 1) return {lo_n, hi_n};
  if (lo_.sign() >= 0) return {lo_n, hi_n};
  if (hi_.sign() <= 0) return {hi_n, lo_n};
  return {Dyadic(), max(lo_n, hi_n)};
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << '[' << iv.lo() << ',' << iv.hi() << ']';
}

// ------------------------------------------------------------- Rect/Box

Side opposite(Side s) { return static_cast<Side>((static_cast<int>(s) + 2) % 4); }

const char* to_string(Side s) {
  switch (s) {
    case Side::South: return "south";
    case Side::East: return "east";
    case Side::North: return "north";
    case Side::West: return "west";
  }
  return "?";
}

bool Rect::on_boundary(const Point& p) const {
  if (!contains(p)) return false;
  return p.x == x.lo() || p.x == x.hi() || p.y == y.lo() || p.y == y.hi();
}

bool Rect::interior_intersects(const Rect& r) const {
  return x.lo() < r.x.hi() && r.x.lo() < x.hi() && y.lo() < r.y.hi() && r.y.lo() < y.hi();
}

Dyadic Rect::diameter_squared() const {
  const Dyadic wx = x.width();
  const Dyadic wy = y.width();
  return wx * wx + wy * wy;
}

Box::Box(Interval x, Interval y, int depth) : x_(std::move(x)), y_(std::move(y)), depth_(depth) {
  if (x_.width() != y_.width())
    throw Error(ErrorKind::InvalidInput, "numeric", "box must be a square");
}

Box Box::square(Dyadic x_lo, Dyadic y_lo, Dyadic width, int depth) {
  Interval x(x_lo, x_lo + width);
  Interval y(y_lo, y_lo + width);
  return Box(std::move(x), std::move(y), depth);
}

std::array<Point, 4> Box::corners() const {
  return {Point{x_.lo(), y_.lo()}, Point{x_.hi(), y_.lo()}, Point{x_.hi(), y_.hi()},
          Point{x_.lo(), y_.hi()}};
}

std::pair<Point, Point> Box::side(Side s) const {
  switch (s) {
    case Side::South: return {{x_.lo(), y_.lo()}, {x_.hi(), y_.lo()}};
    case Side::East: return {{x_.hi(), y_.lo()}, {x_.hi(), y_.hi()}};
    case Side::North: return {{x_.lo(), y_.hi()}, {x_.hi(), y_.hi()}};
    case Side::West: return {{x_.lo(), y_.lo()}, {x_.lo(), y_.hi()}};
  }
  return {};
}

std::array<Box, 4> Box::split() const {
  const Dyadic xm = x_.mid();
  const Dyadic ym = y_.mid();
  const int d = depth_ + 1;
  return {Box({x_.lo(), xm}, {y_.lo(), ym}, d), Box({xm, x_.hi()}, {y_.lo(), ym}, d),
          Box({x_.lo(), xm}, {ym, y_.hi()}, d), Box({xm, x_.hi()}, {ym, y_.hi()}, d)};
}

Box Box::mirrored(Side s) const {
  const Dyadic w = width();
  switch (s) {
    case Side::South: return Box(x_, {y_.lo() - w, y_.lo()}, depth_);
    case Side::East: return Box({x_.hi(), x_.hi() + w}, y_, depth_);
    case Side::North: return Box(x_, {y_.hi(), y_.hi() + w}, depth_);
    case Side::West: return Box({x_.lo() - w, x_.lo()}, y_, depth_);
  }
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Box& b) { return os << b.x() << 'x' << b.y(); }

}  // namespace certmesh
