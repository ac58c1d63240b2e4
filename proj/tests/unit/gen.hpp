#pragma once

// Small random values for property tests.

#include <cstdint>
#include <random>

#include "cmsz/exact_ring.hpp"
#include "cmsz/finite_ring.hpp"

namespace cmsz::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  QuadInt quad(int bound = 20, unsigned max_e = 3) {
    return QuadInt(integer(-bound, bound), integer(-bound, bound), static_cast<unsigned>(integer(0, max_e)));
  }
  QuadInt nonzero_quad(int bound = 20, unsigned max_e = 3) {
    for (;;) {
      QuadInt x = quad(bound, max_e);
      if (!x.is_zero()) return x;
    }
  }
  Rational rational(int bound) {
    Rational q(integer(-bound, bound), integer(1, bound));
    q.canonicalize();
    return q;
  }
  KElem kelem(int bound = 12) { return KElem(rational(bound), rational(bound)); }
  R1 r1() { return R1::from_index(static_cast<unsigned>(integer(0, 8))); }
  R1Mat r1mat() {
    R1Mat m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = r1();
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace cmsz::testing
