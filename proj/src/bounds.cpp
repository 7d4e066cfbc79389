#include "certmesh/bounds.hpp"

#include <vector>

#include "certmesh/error.hpp"

namespace certmesh {

const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::CertifiedFormula: return "certified-formula";
    case BoundSource::UserOverride: return "user-override";
    case BoundSource::OracleDerived: return "oracle-derived";
  }
  return "?";
}

namespace {

// e^7 < 1097
constexpr unsigned long kE7Upper = 1097;

// Products beyond this many bits are not formed; the exponent is bounded
// from above by sum(e * bitlen(base)), which keeps 2^-k a valid lower bound.
constexpr std::uint64_t kExactBitLimit = std::uint64_t{1} << 26;

struct Factor {
  mpz_class base;
  std::uint64_t power;
};

std::int64_t ceil_log2(const mpz_class& n) {
  const auto bits = static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const bool exact_power = mpz_scan1(n.get_mpz_t(), 0) == static_cast<mp_bitcnt_t>(bits - 1);
  return exact_power ? bits - 1 : bits;
}

// ceil(log2(prod base^power)), exact when small enough, an upper bound otherwise.
std::int64_t product_log2(const std::vector<Factor>& fs) {
  std::uint64_t estimate = 0;
  for (const auto& f : fs) estimate += f.power * mpz_sizeinbase(f.base.get_mpz_t(), 2);
  if (estimate > kExactBitLimit) return static_cast<std::int64_t>(estimate);
  mpz_class prod = 1;
  for (const auto& f : fs) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), f.base.get_mpz_t(), f.power);
    prod *= p;
  }
  return ceil_log2(prod);
}

mpz_class pow_ui(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

void check(int d, int L, int min_d) {
  if (d < min_d)
    throw Error(ErrorKind::DegreeTooSmall, "bounds", "bound needs total degree at least " + std::to_string(min_d));
  if (L < 1) throw Error(ErrorKind::InvalidInput, "bounds", "height exponent must be positive");
}

}  // namespace

std::int64_t ev_exponent(int d, int L) {
  check(d, L, 2);
  const auto ud = static_cast<unsigned long>(d);
  const auto uL = static_cast<unsigned long>(L);
  // [d^6 2^(L+2d+11)]^(d^2-1)
  const mpz_class a = pow_ui(ud, 6) * pow_ui(2, uL + 2 * ud + 11);
  // [d^(3d+8) 2^(3L+5d)]^d
  const mpz_class b = pow_ui(ud, 3 * ud + 8) * pow_ui(2, 3 * uL + 5 * ud);
  return std::max(product_log2({{a, ud * ud - 1}}), product_log2({{b, ud}}));
}

std::int64_t delta3_exponent(int d, int L) {
  check(d, L, 1);
  const auto ud = static_cast<unsigned long>(d);
  const auto uL = static_cast<unsigned long>(L);
  // (16^(d+2) 256^L 81^(2d) d^5)^d
  const mpz_class a = pow_ui(16, ud + 2) * pow_ui(256, uL) * pow_ui(81, 2 * ud) * pow_ui(ud, 5);
  // (2^(8L+21) 3^(8d))^2
  const mpz_class b = pow_ui(2, 8 * uL + 21) * pow_ui(3, 8 * ud);
  return std::max(product_log2({{a, ud}}), product_log2({{b, 2}}));
}

std::int64_t delta4_exponent(int d, int L) {
  check(d, L, 1);
  const auto ud = static_cast<unsigned long>(d);
  const auto uL = static_cast<unsigned long>(L);
  const mpz_class c = 36 * kE7Upper;  // 6^2 e^7
  const mpz_class h = mpz_class(256 * 6) * ud * pow_ui(2, uL + 1);
  const std::uint64_t d4 = std::uint64_t{ud} * ud * ud * ud;
  const std::int64_t with_d = product_log2({{c, 30 * d4 * ud}, {h, 5 * d4}});
  const std::int64_t with_2 = product_log2({{c, 30 * 32}, {h, 5 * 16}});
  return std::max(with_d, with_2);
}

Dyadic ev_lower_bound(int d, int L) { return Dyadic::pow2(-ev_exponent(d, L)); }
Dyadic delta3_lower_bound(int d, int L) { return Dyadic::pow2(-delta3_exponent(d, L)); }
Dyadic delta4_lower_bound(int d, int L) { return Dyadic::pow2(-delta4_exponent(d, L)); }

BoundReport bound_report(const Poly& f, const BoundOverrides& overrides) {
  const PolyNorms n = f.norms();
  BoundReport r;
  r.d = n.total_degree;
  r.L = std::max(1, n.height_bits);
  if (overrides.ev) {
    r.ev = *overrides.ev;
  } else {
    const PolyNorms nf = aux_F(f).norms();
    r.ev = {ev_lower_bound(std::max(2, nf.total_degree), std::max(1, nf.height_bits)),
            BoundSource::CertifiedFormula};
  }
  if (overrides.delta) {
    r.delta3 = r.delta4 = *overrides.delta;
  } else {
    const int d = std::max(1, r.d);
    r.delta3 = {delta3_lower_bound(d, r.L), BoundSource::CertifiedFormula};
    r.delta4 = {delta4_lower_bound(d, r.L), BoundSource::CertifiedFormula};
  }
  return r;
}

}  // namespace certmesh
