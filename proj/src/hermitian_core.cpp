#include "cmsz/hermitian_core.hpp"

namespace cmsz {

namespace {

const QuadInt kL = QuadInt::lambda();
const QuadInt kLb = QuadInt::lambda_bar();

QuadInt half(const QuadInt& x) { return x.shifted(-1); }

}  // namespace

const QMat& form_q() {
  static const QMat q{
      {QuadInt(10), QuadInt(-2) * (kL + 2), kL + 2},
      {QuadInt(-2) * (kLb + 2), QuadInt(10), QuadInt(-2) * (kL + 2)},
      {kLb + 2, QuadInt(-2) * (kLb + 2), QuadInt(10)},
  };
  return q;
}

const QMat& twist_phi() {
  static const QMat phi{
      {QuadInt(1), QuadInt(2) * kL - 1, QuadInt(-2)},
      {-half(QuadInt(4) * kL - 3), half(QuadInt(2) * kL + 1), QuadInt(-1)},
      {-half(QuadInt(2) * kL - 1), half(QuadInt(1)), QuadInt(-2)},
  };
  return phi;
}

const QMat& reference_q_twisted() {
  static const QMat q{
      {QuadInt(90), QuadInt(2) * kLb - 1, QuadInt(-15)},
      {QuadInt(2) * kL - 1, QuadInt(90), QuadInt(15) * (QuadInt(2) * kL - 1)},
      {QuadInt(-15), QuadInt(15) * (QuadInt(2) * kLb - 1), QuadInt(70)},
  };
  return q;
}

KMat to_kmat(const QMat& g) {
  KMat r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = KElem(g(i, j));
  return r;
}

std::optional<QMat> inverse(const QMat& g) {
  auto dinv = g.det().inverse();
  if (!dinv) return std::nullopt;
  return *dinv * g.adjugate();
}

KMat inverse(const KMat& g) {
  KElem d = g.det();
  if (d.is_zero()) throw std::domain_error("singular matrix over K");
  return d.inverse() * g.adjugate();
}

std::optional<Rational> similitude_factor(const QMat& g, const QMat& form) {
  QMat p = g.star() * form * g;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (form(i, j).is_zero()) continue;
      KElem c = KElem(p(i, j)) / KElem(form(i, j));
      if (!c.is_rational()) return std::nullopt;
      auto cq = c.to_quadint();
      if (!cq || !(p == *cq * form)) return std::nullopt;
      return c.a();
    }
  }
  return std::nullopt;
}

std::array<Rational, 4> charpoly(const QMat& form) {
  QuadInt tr = form.trace();
  QuadInt m2 = form.principal_minor_sum();
  QuadInt det = form.det();
  if (!tr.is_rational() || !m2.is_rational() || !det.is_rational())
    throw std::domain_error("characteristic polynomial is not rational");
  return {Rational(1), -tr.to_rational(), m2.to_rational(), -det.to_rational()};
}

QMat evaluate_cubic(const std::array<Rational, 4>& p, const QMat& form) {
  auto as_quad = [](const Rational& q) {
    auto x = KElem(q, 0).to_quadint();
    if (!x) throw std::domain_error("coefficient outside O_K[1/2]");
    return *x;
  };
  // Horner: ((form + c2) form + c1) form + c0
  QMat acc = QMat::identity();
  for (std::size_t k = 1; k < 4; ++k) acc = acc * form + QMat::scalar(as_quad(p[k]));
  return acc;
}

TwistReport twist_check() {
  TwistReport rep;
  const QMat& phi = twist_phi();
  rep.computed = phi.star() * form_q() * phi;
  const QMat& reference = reference_q_twisted();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!(rep.computed(i, j) == reference(i, j))) {
        rep.mismatches.push_back({i, j, rep.computed(i, j).str(), reference(i, j).str()});
      }
    }
  }
  rep.det_phi = phi.det();
  rep.det_phi_is_28 = rep.det_phi == QuadInt(28);
  return rep;
}

std::string qmat_str(const QMat& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < 3; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < 3; ++j) s += (j ? ", " : "") + g(i, j).str();
    s += "]";
  }
  return s + "]";
}

}  // namespace cmsz
