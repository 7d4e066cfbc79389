#pragma once

// Closed-form lower bounds on the critical-value gap (EV) and on the two
// separation distances used for singularity neighborhoods. Every bound is
// returned as 2^-k, the largest power of two not exceeding the formula.

#include <cstdint>
#include <optional>

#include "certmesh/numeric.hpp"
#include "certmesh/poly.hpp"

namespace certmesh {

enum class BoundSource : std::uint8_t { CertifiedFormula, UserOverride, OracleDerived };

const char* to_string(BoundSource s);

struct BoundValue {
  Dyadic value;
  BoundSource source = BoundSource::CertifiedFormula;
};

struct BoundReport {
  int d = 0;
  int L = 0;
  BoundValue ev;
  BoundValue delta3;
  BoundValue delta4;

  Dyadic delta() const { return min(delta3.value, delta4.value); }
};

// Exponents k of the bounds 2^-k.
std::int64_t ev_exponent(int d, int L);
std::int64_t delta3_exponent(int d, int L);
std::int64_t delta4_exponent(int d, int L);

Dyadic ev_lower_bound(int d, int L);
Dyadic delta3_lower_bound(int d, int L);
Dyadic delta4_lower_bound(int d, int L);

struct BoundOverrides {
  std::optional<BoundValue> ev;
  std::optional<BoundValue> delta;  // applies to both separation bounds
};

// ev is computed from F = aux_F(f) with its own degree and height; the
// separation bounds from f. Overrides replace the formula values.
BoundReport bound_report(const Poly& f, const BoundOverrides& overrides = {});

}  // namespace certmesh
