#pragma once

// The cubic extension L = K(eta), eta^3 = 3 eta - 1, the cyclic algebra
// D = L + L Pi + L Pi^2 with Pi^3 = mu and Pi z = sigma(z) Pi, its positive
// involution, the element b and the alternating form psi.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cmsz/exact_ring.hpp"
#include "cmsz/mat3.hpp"

namespace cmsz {

/// c0 + c1 eta + c2 eta^2 with coefficients in K.
class LElem {
 public:
  LElem() = default;
  LElem(long n) : c_{KElem(n), KElem(0), KElem(0)} {}  // NOLINT(google-explicit-constructor)
  LElem(const KElem& x) : c_{x, KElem(0), KElem(0)} {}  // NOLINT(google-explicit-constructor)
  LElem(KElem c0, KElem c1, KElem c2) : c_{std::move(c0), std::move(c1), std::move(c2)} {}

  static LElem eta() { return LElem(0, 1, 0); }

  const KElem& operator[](std::size_t i) const { return c_[i]; }
  bool in_k() const { return c_[1].is_zero() && c_[2].is_zero(); }
  bool is_zero() const { return c_[0].is_zero() && in_k(); }

  /// eta -> eta^2 - 2, identity on K.
  LElem sigma() const;
  /// Complex conjugation on the coefficients; eta is real.
  LElem conj() const { return LElem(c_[0].conj(), c_[1].conj(), c_[2].conj()); }

  LElem& operator+=(const LElem& o);
  LElem& operator-=(const LElem& o);
  friend LElem operator+(LElem x, const LElem& y) { return x += y; }
  friend LElem operator-(LElem x, const LElem& y) { return x -= y; }
  friend LElem operator*(const LElem& x, const LElem& y);
  LElem operator-() const { return LElem(-c_[0], -c_[1], -c_[2]); }
  friend bool operator==(const LElem& x, const LElem& y) { return x.c_ == y.c_; }

  std::string str() const;

 private:
  std::array<KElem, 3> c_{};
};

inline LElem conj(const LElem& x) { return x.conj(); }

using LMat = Mat3<LElem>;

/// x0 + x1 Pi + x2 Pi^2.
class DElem {
 public:
  DElem() = default;
  DElem(long n) : x_{LElem(n), LElem(0), LElem(0)} {}  // NOLINT(google-explicit-constructor)
  DElem(const LElem& z) : x_{z, LElem(0), LElem(0)} {}  // NOLINT(google-explicit-constructor)
  DElem(LElem x0, LElem x1, LElem x2) : x_{std::move(x0), std::move(x1), std::move(x2)} {}

  static DElem pi() { return DElem(0, 1, 0); }

  const LElem& operator[](std::size_t i) const { return x_[i]; }
  bool is_zero() const { return x_[0].is_zero() && x_[1].is_zero() && x_[2].is_zero(); }
  bool in_l() const { return x_[1].is_zero() && x_[2].is_zero(); }

  /// The positive involution: z* = conj(z) on L, Pi* = conj(mu) Pi^2.
  DElem star() const;

  friend DElem operator+(const DElem& x, const DElem& y);
  friend DElem operator-(const DElem& x, const DElem& y);
  friend DElem operator*(const DElem& x, const DElem& y);
  DElem operator-() const { return DElem(-x_[0], -x_[1], -x_[2]); }
  friend bool operator==(const DElem& x, const DElem& y) { return x.x_ == y.x_; }

  std::string str() const;

 private:
  std::array<LElem, 3> x_{};
};

/// mu = l^2 / 4 = l / conj(l).
KElem mu();
/// b = (lbar - l) - lbar Pi + lbar Pi^2.
const DElem& element_b();

/// z -> diag(z, sigma^2 z, sigma z), Pi -> [[0, 0, mu], [1, 0, 0], [0, 1, 0]].
LMat embed(const DElem& x);
/// Inverse of embed on its image (reads the first column).
DElem unembed(const LMat& m);
/// Reduced norm: det of the embedded matrix. Throws if it is not in K.
KElem nrd(const DElem& x);
/// Reduced trace, in K.
KElem trd(const DElem& x);
/// Inverse through the adjugate; empty for zero.
std::optional<DElem> inverse(const DElem& x);

/// Q-coordinates on the basis l^k eta^c Pi^i, index 6 i + 2 c + k.
std::array<Rational, 18> q_coordinates(const DElem& x);
/// The element with the basis index above.
DElem q_basis(std::size_t index);
/// Trace of left multiplication on the 18-dimensional Q-space.
Rational trace_dq(const DElem& x);

/// 3 Tr_{K/Q}(trd x); agrees with trace_dq by linearity once it agrees on a basis.
Rational trace_via_trd(const DElem& x);
bool trace_formula_on_basis();

/// psi(x, y) = tr(x* b y), through trace_via_trd.
Rational psi(const DElem& x, const DElem& y);
/// b^{-1} x* b.
DElem star_b(const DElem& x);
/// star_b(g) g, when it is a nonzero rational.
std::optional<Rational> gstar_membership(const DElem& g);

/// Z-basis of O_D: l^k eta^c, l^k eta^c lbar Pi, l^k eta^c lbar Pi^2; index 6 i + 2 c + k.
DElem order_basis(std::size_t index);
/// Coordinates on order_basis.
std::array<Rational, 18> order_coordinates(const DElem& x);

/// Small random elements of D, for property checks.
class DElemGenerator {
 public:
  explicit DElemGenerator(std::uint64_t seed, int bound = 3) : rng_(seed), bound_(bound) {}
  DElem operator()();
  LElem l_elem();

 private:
  int next();
  std::mt19937_64 rng_;
  int bound_;
};

struct SigmaReport {
  bool min_poly = false;          // eta^3 - 3 eta + 1 = 0
  bool sigma_eta_root = false;    // sigma(eta) is again a root
  bool sigma_eta_value = false;   // sigma(eta) = eta^2 - 2
  bool order_three = false;       // sigma^3 = id, sigma != id
  bool fixes_k = false;
  bool multiplicative = false;    // on random pairs
  bool ok() const { return min_poly && sigma_eta_root && sigma_eta_value && order_three && fixes_k && multiplicative; }
};

SigmaReport sigma_check(std::size_t trials = 1000, std::uint64_t seed = 1);

struct EmbeddingReport {
  bool pi_cubed_is_mu = false;
  bool twist_rule = false;       // Pi eta = (eta^2 - 2) Pi
  bool lambda_bar_product = false;  // (lbar Pi)(lbar Pi^2) = 4
  bool associative = false;
  bool homomorphism = false;     // embed(xy) = embed(x) embed(y)
  bool nrd_in_k = false;         // det of random images is sigma-invariant
  bool nrd_pi_is_mu = false;
  bool inverse_ok = false;
  std::size_t trials = 0;
  bool ok() const {
    return pi_cubed_is_mu && twist_rule && lambda_bar_product && associative && homomorphism && nrd_in_k &&
           nrd_pi_is_mu && inverse_ok;
  }
};

EmbeddingReport embed_check(std::size_t trials = 1000, std::uint64_t seed = 2);

struct StarReport {
  bool involutive = false;
  bool anti_multiplicative = false;
  bool pi_star_pi_is_one = false;
  bool eta_fixed = false;
  bool trace_formula = false;   // trace_dq = trace_via_trd on the Q-basis
  std::vector<Rational> leading_minors;  // of the Gram matrix of tr(x y*)
  bool positive_definite = false;
  std::size_t trials = 0;
  bool ok() const {
    return involutive && anti_multiplicative && pi_star_pi_is_one && eta_fixed && trace_formula && positive_definite;
  }
};

StarReport involution_check(std::size_t trials = 1000, std::uint64_t seed = 3);

struct BReport {
  bool b_star_is_minus_b = false;
  KElem nrd_b;
  bool nrd_matches = false;  // -7 (lbar - l)
  int val_p_nrd = -1;
  int val_pbar_nrd = -1;
  bool psi_alternating = false;
  bool star_b_involution = false;
  bool star_b_anti_multiplicative = false;
  std::size_t trials = 0;
  bool ok() const {
    return b_star_is_minus_b && nrd_matches && val_p_nrd == 0 && val_pbar_nrd == 0 && psi_alternating &&
           star_b_involution && star_b_anti_multiplicative;
  }
};

BReport b_checks(std::size_t trials = 1000, std::uint64_t seed = 4);

struct OrderReport {
  bool o_l_closed = false;
  std::size_t o_l_rank = 0;
  bool o_d_closed = false;
  std::string witness;  // first non-integral product, if any
  Rational psi_one_one;
  Rational gram_det;
  int nu2_gram_det = 0;
  int nu2_trace_gram_det = 0;  // the plain trace form tr(xy) on the same basis
  bool ok() const { return o_l_closed && o_l_rank == 6 && o_d_closed && sgn(gram_det) != 0 && nu2_gram_det == 0; }
};

OrderReport order_and_pairing_checks();

struct DetValue {
  std::string label;
  KElem value;
  bool rational = false;
  bool rational_square = false;
  Integer squarefree_kernel;  // of numerator times denominator, with sign
};

struct DetSquareReport {
  Rational det_3q;
  bool det_3q_is_8100 = false;
  Integer root_3q;
  bool det_3q_square = false;
  std::vector<DetValue> b_side;  // -7b, (lbar - l)^{-1}(-7b), (lbar - l)(-7b)
  bool ok() const { return det_3q_is_8100 && det_3q_square; }
};

DetSquareReport det_square_check();

/// Exact determinant over Q.
Rational rational_det(std::vector<std::vector<Rational>> m);
/// Leading principal minors, in order of size.
std::vector<Rational> leading_minors(const std::vector<std::vector<Rational>>& m);

}  // namespace cmsz
