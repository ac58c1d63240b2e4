#pragma once

// Stabilizer of the standard lattice in the integral group: eigenvalue
// bound, the short-vector set V, the column-pairing search and the four
// hand-checked cases.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cmsz/hermitian_core.hpp"

namespace cmsz {

/// v = (a_i + (l/2) b_i)_i in LL^3, LL = Z + (l/2) Z.
struct HalfVec {
  std::array<int, 3> a{};
  std::array<int, 3> b{};

  std::array<QuadInt, 3> column() const;
  std::string str() const;
  friend bool operator==(const HalfVec&, const HalfVec&) = default;
  friend auto operator<=>(const HalfVec&, const HalfVec&) = default;
};

/// x in Z + (l/2) Z.
bool in_half_lattice(const QuadInt& x);
/// The unique HalfVec with this column, if every entry lies in LL.
std::optional<HalfVec> to_half_vec(const std::array<QuadInt, 3>& col);

/// u* Q v.
QuadInt pairing(const HalfVec& u, const HalfVec& v);
/// F = v* Q v as a rational.
Rational form_value(const HalfVec& v);
/// The closed formula for F/10 in the coordinates (a_1, a_2, a_3, b_1, b_2, b_3), times 10.
Rational form_value_formula(const std::array<int, 6>& y);
/// F' = sum y_i^2 - sum_{i<j} |y_i y_j|.
int form_lower_bound(const std::array<int, 6>& y);

struct EigenBoundReport {
  Rational f_at_bound;  // f(48/25)
  Rational f_at_two;    // f(2)
  Rational f_at_zero;
  Rational min_derivative;  // f'(48/25), the minimum of f' on [0, 48/25]
  bool no_negative_roots = false;  // coefficient signs alternate
  bool ok() const { return sgn(f_at_bound) < 0 && sgn(f_at_two) > 0 && sgn(min_derivative) > 0 && no_negative_roots; }
};

EigenBoundReport eigen_bound_certificate();

/// Vectors in LL^3 with v* Q v = 10 c, tau^{+-1} v in LL^3 and v not in (l/2) Z^3,
/// in lexicographic order of (a_1, b_1, a_2, b_2, a_3, b_3).
std::vector<HalfVec> enumerate_v(const Rational& c = 1);

struct VReport {
  std::vector<HalfVec> vectors;
  bool seeds_present = false;
  bool is_union_of_seed_orbits = false;  // V = G2 {seeds}
  bool g2_stable = false;
  bool ok() const { return vectors.size() == 24 && seeds_present && is_union_of_seed_orbits && g2_stable; }
};

VReport v_report();

/// The six matrices +-tau^i, sorted by their text form.
std::vector<QMat> g2_elements();

struct StabilizerResult {
  Rational factor;
  std::size_t vector_count = 0;
  std::size_t triples_checked = 0;
  std::vector<QMat> matrices;  // columns in V, g* Q g = c Q, det a 2-adic unit
};

/// All g = (v1, v2, v3) with columns in V_c whose pairings match c Q.
StabilizerResult stabilizer_search(const Rational& c = 1);

struct CaseReport {
  std::string name;
  HalfVec v2;
  std::vector<HalfVec> v1;  // v1* Q v2 = -2(l+2)
  std::vector<HalfVec> v3;  // v2* Q v3 = -2(l+2)
  std::vector<HalfVec> expected_v1;
  std::vector<HalfVec> expected_v3;
  std::size_t unitary_invertible = 0;  // triples giving a unitary g with unit det
  bool identity_only = false;          // the only such triple is I
  bool lists_match = false;
  bool outcome_matches = false;
  std::string erratum;
};

std::vector<CaseReport> case_analyses();

struct FactorReport {
  std::vector<Rational> candidates;  // c > 0 with 10c, 10/c in (1/4)Z and nu2(c) = 0
  bool unit_norm_forces_power_of_four = false;  // N(det g) = c^3 and N(det g) a power of 4 for G2
  bool lambda_bar_fixes_base_with_factor_4 = false;
  std::vector<StabilizerResult> searches;  // one per candidate
  bool only_factor_one = false;
};

FactorReport factor_normalization();

struct EntryDomainReport {
  bool thirty_q_inverse_integral_at_p = false;  // 30 Q^{-1} has entries in Z[lbar, lbar^{-1}]
  bool lattice_identity_holds = false;  // Z[lbar, 1/lbar] cap (1/30) Z[l, 1/l] = Z + (l/2) Z on a box
  bool found_entries_in_half_lattice = false;
  std::size_t box_checked = 0;
};

EntryDomainReport entry_domain_check(const std::vector<QMat>& found);

}  // namespace cmsz
