#include <doctest.h>

#include "cmsz/hermitian_core.hpp"
#include "gen.hpp"

using namespace cmsz;
using cmsz::testing::Gen;

namespace {

QMat random_qmat(Gen& g) {
  QMat m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = g.quad(6, 1);
  return m;
}

}  // namespace

TEST_CASE("Q is Hermitian with the expected invariants") {
  const QMat& q = form_q();
  CHECK(q.is_hermitian());
  CHECK(q.trace() == QuadInt(30));
  CHECK(q.principal_minor_sum() == QuadInt(210));
  CHECK(q.det() == QuadInt(300));
  const auto p = charpoly(q);
  CHECK(p[0] == 1);
  CHECK(p[1] == -30);
  CHECK(p[2] == 210);
  CHECK(p[3] == -300);
  CHECK(evaluate_cubic(p, q) == QMat());
}

TEST_CASE("the twisted form") {
  const TwistReport r = twist_check();
  CHECK(r.det_phi == QuadInt(28));
  CHECK(r.mismatches.empty());
  CHECK(r.ok());
  CHECK(r.computed == reference_q_twisted());
  CHECK(reference_q_twisted().is_hermitian());
}

TEST_CASE("Cayley-Hamilton and the adjugate on random matrices") {
  Gen g(21);
  for (int trial = 0; trial < 200; ++trial) {
    const QMat a = random_qmat(g);
    CHECK(a.adjugate() * a == QMat::scalar(a.det()));
    const QMat h = a + a.star();
    REQUIRE(h.is_hermitian());
    CHECK(evaluate_cubic(charpoly(h), h) == QMat());
  }
}

TEST_CASE("inverses") {
  Gen g(22);
  int invertible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const QMat a = random_qmat(g);
    const auto inv = inverse(a);
    CHECK(inv.has_value() == (!a.det().is_zero() && a.det().is_unit()));
    if (inv) {
      ++invertible;
      CHECK(*inv * a == QMat::identity());
    }
    if (!a.det().is_zero()) CHECK(inverse(to_kmat(a)) * to_kmat(a) == KMat::identity());
  }
  CHECK(inverse(twist_phi()) == std::nullopt);
}

TEST_CASE("similitude factors") {
  CHECK(similitude_factor(QMat::identity(), form_q()) == Rational(1));
  CHECK(similitude_factor(QMat::scalar(QuadInt::lambda()), form_q()) == Rational(4));
  CHECK(similitude_factor(QMat::diag(1, 1, 2), form_q()) == std::nullopt);
}

TEST_CASE("text form") {
  CHECK(qmat_str(QMat::scalar(QuadInt::half_lambda())).rfind("[[0+1*l/2^1, 0+0*l/2^0, ", 0) == 0);
}
