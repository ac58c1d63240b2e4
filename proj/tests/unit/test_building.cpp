#include <doctest.h>

#include <algorithm>
#include <set>

#include "cmsz/building.hpp"
#include "gen.hpp"

using namespace cmsz;
using cmsz::testing::Gen;

namespace {

const GeneratorSet& gens() {
  static const GeneratorSet g = derive_generators();
  return g;
}

}  // namespace

TEST_CASE("the base vertex") {
  const Vertex v;
  CHECK(v.label() == 0);
  CHECK(v.exponents() == std::array<int, 3>{0, 0, 0});
  CHECK(distance_from_base(v) == 0);
}

TEST_CASE("neighbors") {
  const auto n = neighbors(Vertex());
  CHECK(n.size() == 14);
  CHECK(std::is_sorted(n.begin(), n.end()));
  int l1 = 0;
  for (const auto& x : n) {
    CHECK(adjacent(Vertex(), x));
    CHECK(adjacent(x, Vertex()));
    CHECK(distance_from_base(x) == 1);
    CHECK(x.label() != 0);
    l1 += x.label() == 1;
    const auto back = neighbors(x);
    CHECK(std::find(back.begin(), back.end(), Vertex()) != back.end());
  }
  CHECK(l1 == 7);
  CHECK_FALSE(adjacent(Vertex(), Vertex()));
}

TEST_CASE("canonical form is independent of the basis") {
  Gen g(51);
  const std::vector<std::array<Integer, 3>> base{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(Vertex::from_columns(base, 0, 64, 8) == Vertex());
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::array<Integer, 3>> cols(3);
    for (auto& c : cols)
      for (auto& e : c) e = g.integer(-9, 9);
    Integer det = cols[0][0] * (cols[1][1] * cols[2][2] - cols[2][1] * cols[1][2]) -
                  cols[1][0] * (cols[0][1] * cols[2][2] - cols[2][1] * cols[0][2]) +
                  cols[2][0] * (cols[0][1] * cols[1][2] - cols[1][1] * cols[0][2]);
    if (det == 0) continue;
    const int nu = nu2(det);
    const Vertex v = Vertex::from_columns(cols, nu, 64, 8);
    // unimodular column operations do not change the lattice
    auto mixed = cols;
    for (int k = 0; k < 3; ++k) mixed[0][k] += 3 * cols[1][k] - cols[2][k];
    std::swap(mixed[1], mixed[2]);
    CHECK(Vertex::from_columns(mixed, nu, 64, 8) == v);
    // nor does scaling by 2
    auto scaled = cols;
    for (auto& c : scaled)
      for (auto& e : c) e *= 2;
    CHECK(Vertex::from_columns(scaled, nu + 3, 64, 8) == v);
    CHECK(v.label() == ((nu % 3) + 3) % 3);
  }
}

TEST_CASE("generators move the base vertex to its neighbors") {
  const auto n = neighbors(Vertex());
  std::set<Vertex> images;
  for (int i = 0; i < 7; ++i) {
    images.insert(act(gens().g[i], Vertex()));
    images.insert(act(gens().g_inv[i], Vertex()));
  }
  CHECK(std::vector<Vertex>(images.begin(), images.end()) == n);
  CHECK(act(tau(), Vertex()) == Vertex());
}

TEST_CASE("action preserves adjacency and the label cocycle") {
  const auto n = neighbors(Vertex());
  for (int i = 0; i < 7; ++i) {
    const QMat& g = gens().g[i];
    const Vertex base = act(g, Vertex());
    for (const auto& x : n) {
      const Vertex gx = act(g, x);
      CHECK(adjacent(base, gx));
      CHECK(gx.label() == (x.label() + label_cocycle(g)) % 3);
    }
  }
}

TEST_CASE("low precision is detected") {
  int retries = 0;
  const QMat g = gens().g[1] * gens().g[2] * gens().g[4];
  const Vertex v = act_with_retry(g, Vertex(), PadicConfig{16, 8}, 6, &retries);
  CHECK(v == act(g, Vertex(), PadicConfig{256, 8}));
}

TEST_CASE("balls") {
  CHECK(ball(0).size() == 1);
  CHECK(ball(1).size() == 15);
  const auto b2 = ball(2);
  CHECK(std::is_sorted(b2.begin(), b2.end()));
  for (const auto& v : b2) CHECK(distance_from_base(v) <= 2);
}

TEST_CASE("local certificate") {
  const LocalCheckReport r = local_check(gens());
  CHECK(r.neighbor_count == 14);
  CHECK(r.neighbors_are_generator_images);
  CHECK(r.tau_fixes_base);
  CHECK(r.rho_moves_to_neighbor);
  CHECK(r.labels_split_7_7);
  CHECK(r.cocycle_holds);
  CHECK(r.chamber_count == 21);
  CHECK(r.chambers_match_presentation);
  CHECK(r.chamber_labels_bijective);
  CHECK(r.chamber_shift_rule);
  CHECK(r.chamber_tau_rule);
  CHECK(r.ok());
}

TEST_CASE("transitivity on a radius-1 ball") {
  const TransitivityReport r = transitivity_certificate(gens(), 1, nullptr, {}, 2);
  CHECK(r.ball_size == 15);
  CHECK(r.covered == 15);
  CHECK(r.transitive);
  CHECK(r.ok());
}
