#pragma once

// R1 = O_K[1/2] / (3) = F3[t]/(t^2), with t the image of sqrt(-15) = 1 - 2l
// and involution t -> -t. R0 = F3 is handled as the quotient t = 0.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cmsz/hermitian_core.hpp"
#include "cmsz/mat3.hpp"

namespace cmsz {

/// x0 + x1 t in F3[t]/(t^2), packed as x0 + 3 x1 in [0, 9).
class R1 {
 public:
  constexpr R1() = default;
  constexpr R1(long n) : v_(static_cast<std::uint8_t>(((n % 3) + 3) % 3)) {}  // NOLINT
  static constexpr R1 make(int x0, int x1) {
    R1 r;
    r.v_ = static_cast<std::uint8_t>(((x0 % 3) + 3) % 3 + 3 * (((x1 % 3) + 3) % 3));
    return r;
  }
  static constexpr R1 from_index(unsigned idx) {
    R1 r;
    r.v_ = static_cast<std::uint8_t>(idx);
    return r;
  }
  static constexpr R1 t() { return make(0, 1); }

  constexpr int x0() const { return v_ % 3; }
  constexpr int x1() const { return v_ / 3; }
  constexpr unsigned index() const { return v_; }

  constexpr R1 conj() const { return make(x0(), -x1()); }
  constexpr bool is_unit() const { return x0() != 0; }
  /// Reduction modulo t, viewed back in R1.
  constexpr R1 mod_t() const { return make(x0(), 0); }
  R1 inverse() const;

  friend constexpr R1 operator+(R1 a, R1 b) { return make(a.x0() + b.x0(), a.x1() + b.x1()); }
  friend constexpr R1 operator-(R1 a, R1 b) { return make(a.x0() - b.x0(), a.x1() - b.x1()); }
  constexpr R1 operator-() const { return make(-x0(), -x1()); }
  friend constexpr R1 operator*(R1 a, R1 b) {
    return make(a.x0() * b.x0(), a.x0() * b.x1() + a.x1() * b.x0());
  }
  friend constexpr bool operator==(R1 a, R1 b) { return a.v_ == b.v_; }

  /// Balanced text form "x0+x1*t" with digits in {-1, 0, 1}.
  std::string str() const;

 private:
  std::uint8_t v_{0};
};

inline constexpr R1 conj(R1 x) { return x.conj(); }

using R1Mat = Mat3<R1>;

/// The six units of R1 in a fixed order.
const std::array<R1, 6>& r1_units();

/// Reduction O_K[1/2] -> R1 (2^{-1} = 2, l -> 2 + t).
R1 reduce(const QuadInt& x);
/// Reduction of a K-element whose denominators are prime to 3.
R1 reduce(const KElem& x);
R1 reduce_lambda();

/// Entrywise reduction pi_n (no change of basis). level 0 drops the t part.
R1Mat reduce_entrywise(const QMat& g, int level = 1);
/// pi'_n(g): reduction of Phi^{-1} g Phi, level 0 or 1.
R1Mat reduce_matrix(const QMat& g, int level = 1);

/// Q'_1 = [[0, t, 0], [-t, 0, 0], [0, 0, 1]].
const R1Mat& q1_form();
/// Q'_0 = diag(0, 0, 1).
const R1Mat& q0_form();

/// Reduce every entry modulo t.
R1Mat mod_t(const R1Mat& g);

/// Images of the units -1, 2 and l/2 of O_K[1/2] in R1.
std::array<R1, 3> scalar_generator_images();

/// 18-trit key: entry k contributes index * 9^k.
using ElemKey = std::uint32_t;
ElemKey key_of(const R1Mat& g);
R1Mat mat_of(ElemKey k);

std::string r1mat_str(const R1Mat& g);

}  // namespace cmsz
