#pragma once

// Finite unitary groups U'_0, U'_1 over R0 = F3 and R1 = F3[t]/(t^2), the
// image of the integral group under pi'_1, and its index-3 subgroups.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmsz/finite_ring.hpp"

namespace cmsz {

R1Mat r1_inverse(const R1Mat& g);
/// [a, b] = a^{-1} b^{-1} a b
R1Mat commutator(const R1Mat& a, const R1Mat& b);
/// a^d = d^{-1} a d
R1Mat conjugate(const R1Mat& a, const R1Mat& d);
unsigned element_order(const R1Mat& g);

/// c with g* Q g = c Q and c in F3^x, if it exists.
std::optional<R1> r1_similitude_factor(const R1Mat& g, const R1Mat& form);

/// Explicit finite matrix group over R1, stored as a sorted list of keys.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Subgroup generated by `gens`. Empty if it exceeds `limit` elements.
  static std::optional<FiniteGroup> try_closure(const std::vector<R1Mat>& gens, std::size_t limit);
  static FiniteGroup closure(const std::vector<R1Mat>& gens);
  /// Group with a known element list (must be closed; not re-checked).
  static FiniteGroup from_elements(std::vector<ElemKey> keys, std::vector<R1Mat> gens);

  std::size_t order() const { return keys_.size(); }
  bool contains(ElemKey k) const;
  bool contains(const R1Mat& g) const { return contains(key_of(g)); }
  bool contains_all(const FiniteGroup& sub) const;
  const std::vector<ElemKey>& elements() const { return keys_; }
  const std::vector<R1Mat>& generators() const { return gens_; }

  /// Hash of the sorted key list.
  std::uint64_t fingerprint() const;
  /// d^{-1} G d.
  FiniteGroup conjugated(const R1Mat& d) const;
  FiniteGroup intersect(const FiniteGroup& o) const;
  /// Elements commuting with every generator of `o`.
  bool centralizes(const FiniteGroup& o) const;
  /// d^{-1} x d lies in this group for every generator x and d in `by`'s generators (and inverses).
  bool normalized_by(const std::vector<R1Mat>& by) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.keys_ == b.keys_; }

 private:
  std::vector<ElemKey> keys_;
  std::vector<R1Mat> gens_;
};

struct SpecialElements {
  R1Mat z, u, w, b1, b2, c1, c2, d1, d2, d3, d4;
};

const SpecialElements& special_elements();

struct NamedRelation {
  std::string name;
  bool holds = false;
  /// When the identity as stated fails, the nearby identity that was verified instead.
  std::string erratum;
};

/// Every listed identity among the special elements: orders, commutators,
/// and conjugation actions.
std::vector<NamedRelation> relation_suite();

struct U1Enumeration {
  FiniteGroup u1;       // closure of T, H, M, S generators and -I
  FiniteGroup u1_plus;  // closure of T, H, M, S generators
  bool coset_matches = false;          // u1 = u1_plus  union  (-I) u1_plus
  std::size_t parametrized_count = 0;  // block-form enumeration
  bool parametrized_matches = false;   // same element set as the closure
  bool all_unitary = false;            // every element is a Q'_1 similitude with factor in F3^x
  FiniteGroup u0;                      // block-form enumeration over F3
  bool u0_is_reduction = false;        // u0 = (u1 mod t)
  bool u0_unitary = false;
};

U1Enumeration enumerate_u1();

struct NamedCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct StructureReport {
  std::vector<NamedCheck> checks;
  bool ok() const;
};

StructureReport structure_check(const U1Enumeration& en);

struct ModelImage {
  R1Mat rho_bar;
  R1Mat tau_bar;
  bool rho_matches_reference = false;
  bool tau_matches_reference = false;
  std::vector<R1Mat> scalars;  // generated by the images of -1, 2, l/2
  FiniteGroup image;           // closure of rho_bar, tau_bar, scalars
  FiniteGroup from_special;    // closure of T, H, S, d1 d2, scalars
  FiniteGroup level0;          // image modulo t
  bool level0_is_u0 = false;
  std::vector<NamedRelation> word_identities;
};

ModelImage model_image(const FiniteGroup& u0);

struct NamedSubgroups {
  FiniteGroup p;           // <w, w^u>
  FiniteGroup p2;          // <P, -I>
  FiniteGroup scalars;     // the six scalars
  FiniteGroup thp;         // <T, H, P, scalars>
  FiniteGroup kernel_psi;  // <T, z, d1 d2>
  FiniteGroup j[4];        // J1..J4
};

NamedSubgroups named_subgroups(const ModelImage& mi);

struct ConjugacyClass {
  std::vector<std::uint64_t> members;  // fingerprints, sorted
  std::size_t subgroup_order = 0;
  int matches_j = -1;                  // index 0..3 of the J_i in this class
};

struct Index3Classification {
  std::size_t overgroups_explored = 0;  // subgroups containing P2 of index >= 3
  std::size_t index3_found = 0;         // of those, index exactly 3
  std::vector<ConjugacyClass> classes;
  bool ok = false;                      // 4 classes, each containing exactly one J_i
};

/// Enumerates every subgroup of `image` containing `p2` with index at least 3
/// by one-generator extensions, then groups the index-3 ones into
/// conjugacy classes. `shuffle_seed` permutes the candidate order.
Index3Classification classify_index3(const FiniteGroup& image, const FiniteGroup& p2,
                                     const NamedSubgroups& named,
                                     std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct TorsionReport {
  std::size_t checked = 0;
  bool torsion_free = false;
  std::string witness;  // first conjugate found inside J
};

TorsionReport torsion_certificate(const FiniteGroup& j, const ModelImage& mi, unsigned threads = 1);

struct DetImageReport {
  std::vector<R1> det_values;  // distinct determinants of factor-1 elements, sorted by index
  std::size_t generated_order = 0;
  bool has_one_minus_t = false;
  bool ok() const { return generated_order == 6; }
};

DetImageReport det_image_check(const FiniteGroup& j);

/// Sorted element keys, one per line, for external cross-checks.
std::string dump_group(const FiniteGroup& g);

/// psi(H) has no P-stable subgroup of order 3.
bool psi_h_irreducible(const NamedSubgroups& named);

}  // namespace cmsz
