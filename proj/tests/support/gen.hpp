#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eaqcc/poly.hpp"
#include "eaqcc/polymat.hpp"
#include "print.hpp"

namespace eaqcc::testing {

// Small deterministic generators for the property suites.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Random Laurent polynomial with exponents in [lo, hi].
  LaurentPoly poly(int lo, int hi, double density = 0.5) {
    std::vector<int> e;
    for (int i = lo; i <= hi; ++i)
      if (coin(density)) e.push_back(i);
    return LaurentPoly::from_exponents(e);
  }

  LaurentPoly nonzero_poly(int lo, int hi, double density = 0.5) {
    for (;;) {
      LaurentPoly p = poly(lo, hi, density);
      if (!p.is_zero()) return p;
    }
  }

  // Polynomial with constant term 1 and degree exactly d.
  LaurentPoly delay_free(int d) {
    LaurentPoly p = poly(1, d - 1) + LaurentPoly::one();
    if (d > 0) p += LaurentPoly::monomial(d);
    return p;
  }

  RationalPoly rational(int lo, int hi, int den_deg) {
    const int d = uniform(0, den_deg);
    return {poly(lo, hi), delay_free(d)};
  }

  PolyMatrix matrix(std::size_t r, std::size_t c, int lo, int hi, double density = 0.5) {
    PolyMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = poly(lo, hi, density);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace eaqcc::testing
