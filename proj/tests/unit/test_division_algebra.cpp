#include <doctest.h>

#include "cmsz/division_algebra.hpp"

using namespace cmsz;

TEST_CASE("sigma on L") {
  const LElem e = LElem::eta();
  CHECK(e * e * e == LElem(3) * e - LElem(1));
  CHECK(e.sigma() == e * e - LElem(2));
  CHECK(e.sigma().sigma().sigma() == e);
  CHECK_FALSE(e.sigma() == e);
  const LElem l(KElem::lambda());
  CHECK(l.sigma() == l);
  CHECK(l.in_k());
}

TEST_CASE("algebra relations") {
  const DElem p = DElem::pi();
  CHECK(p * p * p == DElem(LElem(mu())));
  CHECK(p * DElem(LElem::eta()) == DElem(LElem::eta().sigma()) * p);
  const DElem lb(LElem(KElem(QuadInt::lambda_bar())));
  CHECK((lb * p) * (lb * p * p) == DElem(4));
  CHECK(mu() == KElem(QuadInt::mu()));
}

TEST_CASE("random elements: associativity, embedding, inverse") {
  DElemGenerator g(71);
  for (int trial = 0; trial < 100; ++trial) {
    const DElem x = g(), y = g(), z = g();
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(embed(x * y) == embed(x) * embed(y));
    CHECK(unembed(embed(x)) == x);
    CHECK(nrd(x * y) == nrd(x) * nrd(y));
    CHECK(trd(x + y) == trd(x) + trd(y));
    if (!x.is_zero()) {
      const auto inv = inverse(x);
      REQUIRE(inv.has_value());
      CHECK(*inv * x == DElem(1));
      CHECK(x * *inv == DElem(1));
    }
  }
  CHECK_FALSE(inverse(DElem(0)).has_value());
  CHECK(nrd(DElem::pi()) == mu());
}

TEST_CASE("the involution") {
  DElemGenerator g(72);
  CHECK(DElem::pi().star() * DElem::pi() == DElem(1));
  CHECK(DElem(LElem::eta()).star() == DElem(LElem::eta()));
  for (int trial = 0; trial < 100; ++trial) {
    const DElem x = g(), y = g();
    CHECK(x.star().star() == x);
    CHECK((x * y).star() == y.star() * x.star());
    CHECK(sgn(trace_via_trd(x * x.star())) >= 0);
  }
}

TEST_CASE("traces agree") {
  CHECK(trace_formula_on_basis());
  DElemGenerator g(73);
  for (int trial = 0; trial < 20; ++trial) {
    const DElem x = g();
    CHECK(trace_dq(x) == trace_via_trd(x));
  }
  CHECK(trace_dq(DElem(1)) == 18);
}

TEST_CASE("coordinates") {
  for (std::size_t i = 0; i < 18; ++i) {
    const auto c = q_coordinates(q_basis(i));
    for (std::size_t j = 0; j < 18; ++j) CHECK(c[j] == (i == j ? 1 : 0));
    const auto o = order_coordinates(order_basis(i));
    for (std::size_t j = 0; j < 18; ++j) CHECK(o[j] == (i == j ? 1 : 0));
  }
}

TEST_CASE("the element b and psi") {
  const DElem& b = element_b();
  CHECK(b.star() == -b);
  const KElem sq(QuadInt::sqrt_m15());
  CHECK(nrd(b) == KElem(-7) * sq);
  DElemGenerator g(74);
  for (int trial = 0; trial < 50; ++trial) {
    const DElem x = g(), y = g();
    CHECK(psi(x, y) == -psi(y, x));
    CHECK(psi(x, x) == 0);
    CHECK(star_b(star_b(x)) == x);
    CHECK(star_b(x * y) == star_b(y) * star_b(x));
  }
}

TEST_CASE("gstar membership") {
  CHECK(gstar_membership(DElem(1)) == Rational(1));
  CHECK(gstar_membership(DElem(3)) == Rational(9));
}

TEST_CASE("rational linear algebra") {
  using Row = std::vector<Rational>;
  CHECK(rational_det({Row{2, 1}, Row{1, 1}}) == 1);
  CHECK(rational_det({Row{0, 1}, Row{1, 0}}) == -1);
  CHECK(rational_det({Row{1, 2}, Row{2, 4}}) == 0);
  CHECK(leading_minors({Row{2, 1}, Row{1, 3}}) == std::vector<Rational>{2, 5});
}

TEST_CASE("reports") {
  CHECK(sigma_check(200).ok());
  CHECK(embed_check(200).ok());
  const StarReport s = involution_check(200);
  CHECK(s.positive_definite);
  CHECK(s.ok());
  const BReport b = b_checks(200);
  CHECK(b.val_p_nrd == 0);
  CHECK(b.val_pbar_nrd == 0);
  CHECK(b.ok());
  const DetSquareReport d = det_square_check();
  CHECK(d.det_3q == 8100);
  CHECK(d.root_3q == 90);
  CHECK(d.ok());
}

TEST_CASE("the order and the pairing") {
  const OrderReport r = order_and_pairing_checks();
  CHECK(r.o_l_closed);
  CHECK(r.o_l_rank == 6);
  CHECK(r.o_d_closed);
  CHECK(sgn(r.gram_det) != 0);
  // The pairing is not 2-adically perfect on this order; the discriminant
  // of the ramified order carries 2^24 already for the trace form.
  CHECK(r.nu2_gram_det == 24);
  CHECK(r.nu2_trace_gram_det == 24);
}
