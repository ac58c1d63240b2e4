#include "cmsz/cmsz_generators.hpp"

namespace cmsz {

const QMat& rho() {
  static const QMat m{
      {QuadInt(0), QuadInt(0), QuadInt::half_lambda()},
      {QuadInt(0), QuadInt(-1), QuadInt::half_lambda() + 1},
      {QuadInt(1), QuadInt(-1), QuadInt(1)},
  };
  return m;
}

const QMat& tau() {
  static const QMat m{
      {QuadInt(0), QuadInt(-1), QuadInt::half_lambda()},
      {QuadInt(1), QuadInt(-1), QuadInt::half_lambda() + 1},
      {QuadInt(0), QuadInt(0), QuadInt(1)},
  };
  return m;
}

const std::vector<Triple>& relation_triples() {
  static const std::vector<Triple> t{
      {3, 3, 3}, {6, 6, 6}, {5, 5, 5},  // = (l/2) I
      {1, 1, 0}, {2, 2, 0}, {4, 4, 0},  // = I
      {1, 3, 6}, {2, 6, 5}, {4, 5, 3},  // = I
  };
  return t;
}

namespace {

QMat must_invert(const QMat& g, const char* what) {
  auto inv = inverse(g);
  if (!inv) throw ConstructionError(std::string("not invertible over O_K[1/2]: ") + what);
  return *inv;
}

std::string triple_name(const Triple& t) {
  auto [i, j, k] = t;
  return "g" + std::to_string(i) + "g" + std::to_string(j) + "g" + std::to_string(k);
}

}  // namespace

QMat triple_product(const GeneratorSet& gen, const Triple& t) {
  auto [i, j, k] = t;
  return gen.g[i] * gen.g[j] * gen.g[k];
}

GeneratorSet derive_generators() {
  GeneratorSet gen;
  gen.rho = rho();
  gen.tau = tau();
  const QMat tau_inv = must_invert(gen.tau, "tau");
  auto conj_by_tau = [&](const QMat& x) { return gen.tau * x * tau_inv; };

  auto& g = gen.g;
  g[3] = gen.rho;
  g[6] = conj_by_tau(g[3]);
  g[5] = conj_by_tau(g[6]);
  g[1] = must_invert(g[3] * g[6], "g3 g6");
  QMat g1_inv = must_invert(g[1], "g1");
  g[0] = g1_inv * g1_inv;
  g[2] = conj_by_tau(g[1]);
  g[4] = conj_by_tau(g[2]);
  for (int i = 0; i < 7; ++i) gen.g_inv[i] = must_invert(g[i], "g_i");

  bool all = true;
  for (int i = 0; i < 7; ++i) {
    bool ok = tau_inv * g[(2 * i) % 7] * gen.tau == g[i];
    gen.conjugation_relations.push_back(
        {"tau^-1 g" + std::to_string((2 * i) % 7) + " tau = g" + std::to_string(i), ok});
    all = all && ok;
  }
  const QMat scalar_half_l = QMat::scalar(QuadInt::half_lambda());
  const auto& rels = relation_triples();
  for (std::size_t n = 0; n < rels.size(); ++n) {
    const QMat& target = n < 3 ? scalar_half_l : QMat::identity();
    bool ok = triple_product(gen, rels[n]) == target;
    gen.product_relations.push_back({triple_name(rels[n]) + (n < 3 ? " = l/2 I" : " = I"), ok});
    all = all && ok;
  }
  for (int i = 0; i < 7; ++i) {
    auto c = similitude_factor(g[i], form_q());
    if (!c || sgn(*c) <= 0) throw ConstructionError("g" + std::to_string(i) + " is not a Q-similitude");
  }
  if (!all) throw ConstructionError("generator relations failed");
  return gen;
}

TrianglePresentation triangle_presentation(const GeneratorSet& gen) {
  TrianglePresentation tp;
  for (const auto& [i, j, k] : relation_triples()) {
    tp.triples.insert({i, j, k});
    tp.triples.insert({j, k, i});
    tp.triples.insert({k, i, j});
  }
  if (tp.triples.size() != 21)
    throw ConstructionError("triangle presentation has " + std::to_string(tp.triples.size()) +
                            " triples, expected 21");
  const QMat one = QMat::identity();
  const QMat half_l = QMat::scalar(QuadInt::half_lambda());
  for (const auto& t : tp.triples) {
    QMat p = triple_product(gen, t);
    if (!(p == one || p == half_l))
      throw ConstructionError("product " + triple_name(t) + " is neither I nor (l/2) I");
  }
  return tp;
}

ChamberStabilizerReport chamber_stabilizer_certificate(const GeneratorSet& gen) {
  ChamberStabilizerReport rep;
  rep.ok = true;
  for (int i : {1, 3}) {
    QMat tj = QMat::identity();
    for (int j = 0; j < 3; ++j) {
      bool scalar = power(gen.g[i] * tj, 9).is_scalar();
      rep.cases.push_back({i, j, scalar});
      bool expected = (i == 3 && j == 0);
      rep.ok = rep.ok && (scalar == expected);
      tj = tj * gen.tau;
    }
  }
  return rep;
}

}  // namespace cmsz
