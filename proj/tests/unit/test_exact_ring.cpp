#include <doctest.h>

#include "cmsz/exact_ring.hpp"
#include "gen.hpp"

using namespace cmsz;
using cmsz::testing::Gen;

TEST_CASE("lambda satisfies its minimal polynomial") {
  const QuadInt l = QuadInt::lambda();
  CHECK(l * l == l - 4);
  CHECK(l.conj() == QuadInt::lambda_bar());
  CHECK(QuadInt::lambda_bar() - l == QuadInt::sqrt_m15());
  CHECK(QuadInt::sqrt_m15() * QuadInt::sqrt_m15() == QuadInt(-15));
  CHECK(l.norm() == 4);
  CHECK(l.trace() == 1);
  CHECK(QuadInt::mu() * QuadInt::lambda_bar() == l);
}

TEST_CASE("normal form") {
  CHECK(QuadInt(4, 2, 1) == QuadInt(2, 1));
  CHECK(QuadInt(0, 0, 5).e() == 0);
  CHECK(QuadInt(3, 0, 2).e() == 2);
  CHECK(QuadInt::half_lambda().shifted(1) == QuadInt::lambda());
  CHECK(QuadInt(1, 1, 1).str() == "1+1*l/2^1");
}

TEST_CASE("ring axioms on random elements") {
  Gen g(11);
  for (int trial = 0; trial < 500; ++trial) {
    const QuadInt x = g.quad(), y = g.quad(), z = g.quad();
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == QuadInt(0));
    CHECK(x * QuadInt(1) == x);
  }
}

TEST_CASE("conjugation, norm and trace") {
  Gen g(12);
  for (int trial = 0; trial < 500; ++trial) {
    const QuadInt x = g.quad(), y = g.quad();
    CHECK(conj(conj(x)) == x);
    CHECK(conj(x * y) == conj(x) * conj(y));
    CHECK(conj(x + y) == conj(x) + conj(y));
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK(KElem(x * conj(x)) == KElem(x.norm(), 0));
    CHECK((x + y).trace() == x.trace() + y.trace());
  }
}

TEST_CASE("valuations are additive") {
  Gen g(13);
  CHECK(val_p(QuadInt::lambda()) == 2);
  CHECK(val_p(QuadInt::lambda_bar()) == 0);
  CHECK(val_pbar(QuadInt::lambda()) == 0);
  CHECK(val_pbar(QuadInt::lambda_bar()) == 2);
  CHECK(val_p(QuadInt::half_lambda()) == 1);
  CHECK(val_p(QuadInt(2)) == 1);
  CHECK_FALSE(val_p(QuadInt(0)).has_value());
  for (int trial = 0; trial < 500; ++trial) {
    const QuadInt x = g.nonzero_quad(), y = g.nonzero_quad();
    CHECK(*val_p(x * y) == *val_p(x) + *val_p(y));
    CHECK(*val_pbar(x) == *val_p(conj(x)));
    CHECK(*val_p(x) + *val_pbar(x) == nu2(x.norm()));
  }
}

TEST_CASE("units of O_K[1/2]") {
  CHECK(QuadInt::lambda().is_unit());
  CHECK(QuadInt(2).is_unit());
  CHECK_FALSE(QuadInt(3).is_unit());
  CHECK(*QuadInt::lambda().inverse() * QuadInt::lambda() == QuadInt(1));
  Gen g(14);
  for (int trial = 0; trial < 300; ++trial) {
    const QuadInt x = g.nonzero_quad();
    const auto inv = x.inverse();
    CHECK(inv.has_value() == is_power_of_two(x.norm()));
    if (inv) CHECK(*inv * x == QuadInt(1));
  }
}

TEST_CASE("the prime above 3") {
  CHECK(QuadInt(3).in_c());
  CHECK((QuadInt::lambda() + 1).in_c());
  CHECK_FALSE(QuadInt(1).in_c());
  CHECK(QuadInt::sqrt_m15().in_c());
}

TEST_CASE("K arithmetic") {
  Gen g(15);
  for (int trial = 0; trial < 300; ++trial) {
    const KElem x = g.kelem(), y = g.kelem();
    CHECK(x * y == y * x);
    CHECK((x * y).norm() == x.norm() * y.norm());
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK(conj(x * y) == conj(x) * conj(y));
  }
  CHECK(KElem(QuadInt(1, 1, 1)) == KElem(Rational(1, 2), Rational(1, 2)));
  CHECK(KElem(Rational(1, 3), 0).to_quadint() == std::nullopt);
  CHECK(KElem(Rational(3, 8), 1).to_quadint() == QuadInt(3, 8, 3));
}

TEST_CASE("2-adic valuation helpers") {
  CHECK(nu2(Integer(96)) == 5);
  CHECK(nu2(Rational(3, 40)) == -3);
  CHECK(is_power_of_two(Rational(1, 8)));
  CHECK(is_power_of_two(Rational(4)));
  CHECK_FALSE(is_power_of_two(Rational(6)));
}

TEST_CASE("2-adic embedding") {
  const Integer root = lambda_2adic(64);
  const Integer mod = Integer(1) << 64;
  Integer v = (root * root - root + 4) % mod;
  CHECK(v == 0);
  CHECK(root % 4 == 0);
  CHECK(root % 32 == 20);

  CHECK(embed_2adic(QuadInt::lambda()).valuation() == 2);
  CHECK(embed_2adic(QuadInt::lambda_bar()).valuation() == 0);

  Gen g(16);
  for (int trial = 0; trial < 300; ++trial) {
    const QuadInt x = g.nonzero_quad(), y = g.nonzero_quad();
    const Padic2 ex = embed_2adic(x), ey = embed_2adic(y);
    CHECK(ex.valuation() == *val_p(x));
    CHECK((ex * ey).agrees_with(embed_2adic(x * y)));
    const QuadInt s = x + y;
    if (!s.is_zero()) CHECK((ex + ey).agrees_with(embed_2adic(s, 48)));
  }
}

TEST_CASE("precision guard") {
  const Padic2 x(Integer(1), 0, 10);
  CHECK_NOTHROW(x.check_guard(8));
  CHECK_THROWS_AS(x.check_guard(12), PrecisionError);
}
