#include <doctest.h>

#include "cmsz/cmsz_generators.hpp"

using namespace cmsz;

TEST_CASE("rho and tau") {
  CHECK(power(tau(), 3) == QMat::identity());
  CHECK_FALSE(tau() == QMat::identity());
  CHECK(similitude_factor(tau(), form_q()) == Rational(1));
  const auto c = similitude_factor(rho(), form_q());
  REQUIRE(c.has_value());
  CHECK(*c > 0);
}

TEST_CASE("derived generators satisfy every relation") {
  const GeneratorSet gen = derive_generators();
  CHECK(gen.g[3] == rho());
  CHECK(gen.conjugation_relations.size() == 7);
  CHECK(gen.product_relations.size() == 9);
  for (const auto& r : gen.conjugation_relations) CHECK_MESSAGE(r.holds, r.name);
  for (const auto& r : gen.product_relations) CHECK_MESSAGE(r.holds, r.name);
  for (int i = 0; i < 7; ++i) {
    CHECK(gen.g[i] * gen.g_inv[i] == QMat::identity());
    CHECK(power(inverse(tau()).value(), 1) * gen.g[(2 * i) % 7] * tau() == gen.g[i]);
  }
}

TEST_CASE("the presentation is closed under rotation") {
  const GeneratorSet gen = derive_generators();
  const TrianglePresentation tp = triangle_presentation(gen);
  CHECK(tp.triples.size() == 21);
  CHECK(relation_triples().size() == 9);
  const QMat half = QMat::scalar(QuadInt::half_lambda());
  for (const auto& [i, j, k] : tp.triples) {
    CHECK(tp.contains(j, k, i));
    const QMat p = triple_product(gen, {i, j, k});
    CHECK((p == QMat::identity() || p == half));
  }
}

TEST_CASE("chamber stabilizer powers") {
  const ChamberStabilizerReport r = chamber_stabilizer_certificate(derive_generators());
  CHECK(r.ok);
  for (const auto& c : r.cases) {
    if (c.i == 1) CHECK_FALSE(c.scalar);
    if (c.i == 3) CHECK(c.scalar == (c.j == 0));
  }
}
