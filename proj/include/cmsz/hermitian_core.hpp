#pragma once

// The Hermitian forms Q and Q' = Phi* Q Phi, unitary similitudes, and exact
// characteristic polynomials.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cmsz/exact_ring.hpp"
#include "cmsz/mat3.hpp"

namespace cmsz {

using QMat = Mat3<QuadInt>;
using KMat = Mat3<KElem>;

/// The positive definite Hermitian form Q on K^3.
const QMat& form_q();
/// The change of basis Phi (det Phi = 28).
const QMat& twist_phi();
/// Reference value of Q': [[90, 2conj(l)-1, -15], [2l-1, 90, 15(2l-1)], [-15, 15(2conj(l)-1), 70]].
const QMat& reference_q_twisted();

KMat to_kmat(const QMat& g);

/// Exact inverse over O_K[1/2]; empty if det g is not a unit there.
std::optional<QMat> inverse(const QMat& g);
/// Exact inverse over K; throws on a singular matrix.
KMat inverse(const KMat& g);

/// The unique rational c with g* form g = c form, if one exists.
std::optional<Rational> similitude_factor(const QMat& g, const QMat& form);

/// Monic characteristic polynomial det(tI - form), coefficients (1, c2, c1, c0).
/// Throws if a coefficient is not rational.
std::array<Rational, 4> charpoly(const QMat& form);
/// Evaluate p(form) for a monic cubic p; zero matrix by Cayley-Hamilton.
QMat evaluate_cubic(const std::array<Rational, 4>& p, const QMat& form);

struct TwistMismatch {
  int row;
  int col;
  std::string computed;
  std::string reference;
};

struct TwistReport {
  QMat computed;                      // Phi* Q Phi
  std::vector<TwistMismatch> mismatches;
  QuadInt det_phi;
  bool det_phi_is_28 = false;
  bool ok() const { return mismatches.empty() && det_phi_is_28; }
};

TwistReport twist_check();

/// "[[x00, x01, x02], [x10, ...], ...]" with entries in the "a+b*l/2^e" form.
std::string qmat_str(const QMat& g);

}  // namespace cmsz
