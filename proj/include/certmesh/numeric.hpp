#pragma once

// Exact dyadic scalars m*2^e, closed dyadic intervals and axis-aligned dyadic
// boxes. Nothing in here ever rounds.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace certmesh {

class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : m_(value) { canonicalize(); }  // NOLINT(implicit)
  Dyadic(mpz_class mantissa, std::int64_t exponent);

  static Dyadic pow2(std::int64_t k) { return Dyadic(mpz_class(1), k); }

  // Accepts integers ("-3"), fractions whose denominator is a power of two
  // ("5/8", "3/2^4") and decimals whose value is dyadic ("0.375").
  static Dyadic parse(std::string_view text);

  const mpz_class& mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }

  int sign() const { return sgn(m_); }
  bool is_zero() const { return sgn(m_) == 0; }

  Dyadic operator-() const { return Dyadic(-m_, e_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  // Multiplication by 2^k; exact for every k.
  Dyadic scaled(std::int64_t k) const { return is_zero() ? *this : Dyadic(m_, e_ + k); }
  Dyadic half() const { return scaled(-1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.e_ == b.e_ && a.m_ == b.m_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  // Exact decimal expansion, e.g. "-0.375". Dyadics always terminate.
  std::string to_decimal() const;
  double to_double() const;

  std::size_t hash() const;

 private:
  void canonicalize();

  mpz_class m_{0};
  std::int64_t e_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

struct Point {
  Dyadic x;
  Dyadic y;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

Point midpoint(const Point& a, const Point& b);

struct PointHash {
  std::size_t operator()(const Point& p) const { return p.x.hash() * 1000003u ^ p.y.hash(); }
};

// Closed interval [lo, hi] with lo <= hi.
class Interval {
 public:
  Interval() = default;
  explicit Interval(Dyadic point) : lo_(point), hi_(std::move(point)) {}
  Interval(Dyadic lo, Dyadic hi);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic mid() const { return (lo_ + hi_).half(); }

  bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }

  Interval operator-() const { return {-hi_, -lo_}; }
  friend Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
  }
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator*(const Dyadic& s, const Interval& a);
  friend Interval operator+(const Interval& a, const Dyadic& s) { return {a.lo_ + s, a.hi_ + s}; }

  // Tight power: even powers of an interval straddling zero start at zero.
  Interval pow(unsigned n) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& iv);

enum class Side : std::uint8_t { South = 0, East = 1, North = 2, West = 3 };

constexpr std::array<Side, 4> kSides = {Side::South, Side::East, Side::North, Side::West};

Side opposite(Side s);
const char* to_string(Side s);

// Axis-aligned rectangle; not necessarily square.
struct Rect {
  Interval x;
  Interval y;

  bool contains(const Point& p) const { return x.contains(p.x) && y.contains(p.y); }
  bool contains(const Rect& r) const { return r.x.subset_of(x) && r.y.subset_of(y); }
  bool on_boundary(const Point& p) const;
  // Interiors overlap (touching along a side or corner does not count).
  bool interior_intersects(const Rect& r) const;
  Point center() const { return {x.mid(), y.mid()}; }
  // Squared Euclidean diameter.
  Dyadic diameter_squared() const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

// A square box. The depth records how many halvings separate it from the
// root of the subdivision it belongs to; it does not affect geometry.
class Box {
 public:
  Box() = default;
  Box(Interval x, Interval y, int depth = 0);
  static Box square(Dyadic x_lo, Dyadic y_lo, Dyadic width, int depth = 0);

  const Interval& x() const { return x_; }
  const Interval& y() const { return y_; }
  int depth() const { return depth_; }
  Dyadic width() const { return x_.width(); }
  Point center() const { return {x_.mid(), y_.mid()}; }
  Rect rect() const { return {x_, y_}; }

  // Corners in counter-clockwise order starting at the south-west corner.
  std::array<Point, 4> corners() const;
  // Endpoints of a side, ordered by increasing coordinate.
  std::pair<Point, Point> side(Side s) const;

  // Children ordered SW, SE, NW, NE.
  std::array<Box, 4> split() const;
  // The box of equal width across side s.
  Box mirrored(Side s) const;

  bool contains(const Point& p) const { return rect().contains(p); }
  bool contains(const Box& b) const { return rect().contains(b.rect()); }
  bool interior_intersects(const Box& b) const { return rect().interior_intersects(b.rect()); }
  bool on_boundary(const Point& p) const { return rect().on_boundary(p); }

  // Geometric equality; depth is ignored.
  friend bool operator==(const Box& a, const Box& b) { return a.x_ == b.x_ && a.y_ == b.y_; }

 private:
  Interval x_;
  Interval y_;
  int depth_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Box& b);

}  // namespace certmesh

template <>
struct std::hash<certmesh::Dyadic> {
  std::size_t operator()(const certmesh::Dyadic& d) const { return d.hash(); }
};
