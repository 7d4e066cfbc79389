#pragma once

#include <random>
#include <string>

#include "certmesh/numeric.hpp"

namespace certmesh::test {

inline Dyadic D(const std::string& s) { return Dyadic::parse(s); }

inline Box square(const std::string& x, const std::string& y, const std::string& w) {
  return Box::square(D(x), D(y), D(w));
}

// Random dyadic k/2^s with |k| <= range.
inline Dyadic random_dyadic(std::mt19937_64& rng, long range, int s) {
  std::uniform_int_distribution<long> pick(-range, range);
  return Dyadic(mpz_class(pick(rng)), -s);
}

}  // namespace certmesh::test
