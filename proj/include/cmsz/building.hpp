#pragma once

// Vertices of the Bruhat-Tits building of PGL3(Q2) as canonical 2-adic
// Hermite forms, adjacency, labels, and the local certificates for the
// action of the integral group.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cmsz/cmsz_generators.hpp"
#include "cmsz/exact_ring.hpp"
#include "cmsz/finite_unitary.hpp"

namespace cmsz {

/// Homothety class of a Z2-lattice, stored as its primitive column Hermite
/// form: upper triangular, diagonal 2^a_i, entry (i, j) in [0, 2^a_i) for
/// j > i, and not contained in 2 Z2^3.
class Vertex {
 public:
  /// The standard lattice Z2^3.
  Vertex();

  /// Canonical form of the lattice spanned by `cols` modulo 2^precision.
  /// `exact_nu` is the known valuation of the lattice index (for a basis,
  /// nu(det)); throws PrecisionError unless the truncated computation
  /// reproduces it with `guard` bits to spare.
  static Vertex from_columns(const std::vector<std::array<Integer, 3>>& cols, int exact_nu, unsigned precision,
                             unsigned guard);

  const Integer& operator()(std::size_t i, std::size_t j) const { return h_[3 * i + j]; }
  const std::array<int, 3>& exponents() const { return a_; }
  /// Sum of the diagonal exponents modulo 3.
  int label() const;
  std::string str() const;

  friend bool operator==(const Vertex& x, const Vertex& y) { return x.a_ == y.a_ && x.h_ == y.h_; }
  friend bool operator<(const Vertex& x, const Vertex& y);

 private:
  std::array<Integer, 9> h_;
  std::array<int, 3> a_{0, 0, 0};
};

struct PadicConfig {
  unsigned precision = Padic2::kDefaultPrecision;
  unsigned guard = Padic2::kDefaultGuard;
};

/// [g Lambda] through the p-adic embedding.
Vertex act(const QMat& g, const Vertex& v, const PadicConfig& cfg = {});
/// Same, doubling the precision up to `max_retries` times on PrecisionError.
Vertex act_with_retry(const QMat& g, const Vertex& v, PadicConfig cfg, int max_retries, int* retries = nullptr);

/// The 14 adjacent vertices, sorted.
std::vector<Vertex> neighbors(const Vertex& v);
bool adjacent(const Vertex& x, const Vertex& y);

/// nu(det g) mod 3, in {0, 1, 2}.
int label_cocycle(const QMat& g);

/// All vertices at distance at most `radius` from the base vertex, sorted.
std::vector<Vertex> ball(unsigned radius);
/// Combinatorial distance to the base vertex (spread of the elementary divisors).
int distance_from_base(const Vertex& v);

struct LocalCheckReport {
  std::size_t neighbor_count = 0;
  bool neighbors_are_generator_images = false;  // {g_i^{+-1} L0} = neighbors(L0)
  bool tau_fixes_base = false;
  bool rho_moves_to_neighbor = false;
  bool labels_split_7_7 = false;
  std::size_t cocycle_checks = 0;
  bool cocycle_holds = false;  // on the radius-2 ball
  std::size_t chamber_count = 0;
  bool chambers_match_presentation = false;  // C(i,j,k) are the 21 chambers at L0
  bool chamber_labels_bijective = false;
  bool chamber_shift_rule = false;  // g_i^{-1} C(i,j,k) = C(j,k,i)
  bool chamber_tau_rule = false;    // tau C(i,j,k) = C(2i,2j,2k)
  bool ok() const;
};

LocalCheckReport local_check(const GeneratorSet& gen, const PadicConfig& cfg = {}, unsigned cocycle_radius = 2);

struct TransitivityReport {
  unsigned radius = 0;
  std::size_t ball_size = 0;
  std::size_t covered = 0;
  std::size_t words_explored = 0;
  unsigned word_length_used = 0;  // longest representative word, in letters
  int precision_retries = 0;
  bool transitive = false;
  bool filtered = false;
  /// With a filter: vertices in the ball for which exactly one of w, w tau,
  /// w tau^2 reduces into the filter, for every word w reaching the vertex.
  std::size_t filter_unique = 0;
  bool tau_cosets_distinct = false;  // tau_bar, tau_bar^2 not in the filter
  bool simply_transitive = false;
  bool ok() const { return transitive && (!filtered || simply_transitive); }
};

/// Search radius beyond the target ball that paths may pass through.
inline constexpr int kTransitivitySlack = 2;
/// Maximal number of tau^i rho^{+-1} steps for a ball of radius r.
inline constexpr unsigned transitivity_step_budget(unsigned radius) { return 3 * radius + 4; }

/// Orbit search from the base vertex: a vertex reached by the word w has the
/// successors w tau^i rho^{+-1} L0 (i = 0, 1, 2), restricted to vertices at
/// distance at most r + kTransitivitySlack. Each reached vertex keeps its first word.
TransitivityReport transitivity_certificate(const GeneratorSet& gen, unsigned radius,
                                            const FiniteGroup* filter = nullptr, const PadicConfig& cfg = {},
                                            unsigned threads = 1);

}  // namespace cmsz
