#pragma once

// The elements rho, tau, the seven g_i indexed by Z/7Z, the 21-triple
// presentation set, and the chamber-stabilizer power certificates.

#include <array>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cmsz/hermitian_core.hpp"

namespace cmsz {

const QMat& rho();
const QMat& tau();

struct Relation {
  std::string name;
  bool holds = false;
};

struct GeneratorSet {
  QMat rho;
  QMat tau;
  std::array<QMat, 7> g;  // indexed by i in Z/7Z
  std::array<QMat, 7> g_inv;
  /// tau^{-1} g_{2i} tau = g_i for each i.
  std::vector<Relation> conjugation_relations;
  /// The nine cubic products that are I or (l/2) I.
  std::vector<Relation> product_relations;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds g_3 = rho and the rest from the conjugation and product relations,
/// then checks all 16 relations. Throws ConstructionError on any failure.
GeneratorSet derive_generators();

using Triple = std::tuple<int, int, int>;

/// The nine triples whose products are listed as relations.
const std::vector<Triple>& relation_triples();

struct TrianglePresentation {
  std::set<Triple> triples;
  bool contains(int i, int j, int k) const { return triples.count({i, j, k}) != 0; }
};

/// All cyclic rotations of the relation triples; verified to have 21 members,
/// each with product I or (l/2) I.
TrianglePresentation triangle_presentation(const GeneratorSet& gen);

/// g_i g_j g_k.
QMat triple_product(const GeneratorSet& gen, const Triple& t);

struct PowerCase {
  int i;       // generator index
  int j;       // tau exponent
  bool scalar; // (g_i tau^j)^9 is scalar
};

struct ChamberStabilizerReport {
  std::vector<PowerCase> cases;
  /// Expected: i = 1 never scalar; i = 3 scalar exactly for j = 0.
  bool ok = false;
};

ChamberStabilizerReport chamber_stabilizer_certificate(const GeneratorSet& gen);

}  // namespace cmsz
