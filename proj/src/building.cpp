#include "cmsz/building.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "cmsz/finite_ring.hpp"
#include "cmsz/parallel.hpp"

namespace cmsz {

namespace {

using Column = std::array<Integer, 3>;

int nu2_capped(const Integer& x, unsigned cap) {
  if (x == 0) return static_cast<int>(cap);
  return std::min(nu2(x), static_cast<int>(cap));
}

void reduce_mod(Integer& x, const Integer& m) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); }

}  // namespace

Vertex::Vertex() {
  for (std::size_t i = 0; i < 9; ++i) h_[i] = (i % 4 == 0) ? 1 : 0;
}

Vertex Vertex::from_columns(const std::vector<Column>& input, int exact_nu, unsigned precision, unsigned guard) {
  const Integer mod = Integer(1) << precision;
  std::vector<Column> cols = input;
  for (auto& c : cols)
    for (auto& x : c) reduce_mod(x, mod);

  // Column echelon form from the bottom row up. A row with no entry below
  // 2^precision gets the pivot 2^precision e_r, which is also in the span
  // of the truncated lattice.
  std::array<Column, 3> basis;
  std::array<int, 3> a{};
  for (int r = 2; r >= 0; --r) {
    std::size_t best = cols.size();
    int best_v = static_cast<int>(precision);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      int v = nu2_capped(cols[c][r], precision);
      if (v < best_v) {
        best_v = v;
        best = c;
      }
    }
    a[r] = best_v;
    if (best == cols.size()) {
      basis[r] = {0, 0, 0};
      basis[r][r] = mod;
      continue;
    }
    Column p = cols[best];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
    Integer unit = p[r] >> best_v;
    Integer unit_inv;
    mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    for (auto& x : p) {
      x *= unit_inv;
      reduce_mod(x, mod);
    }
    for (auto& c : cols) {
      Integer q = c[r] >> best_v;
      for (int i = 0; i < 3; ++i) {
        c[i] -= q * p[i];
        reduce_mod(c[i], mod);
      }
    }
    basis[r] = std::move(p);
  }

  int sum = a[0] + a[1] + a[2];
  int max_a = std::max({a[0], a[1], a[2]});
  if (sum != exact_nu || max_a + static_cast<int>(guard) > static_cast<int>(precision)) {
    throw PrecisionError("lattice reduction: exponents " + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," +
                         std::to_string(a[2]) + " do not certify index valuation " + std::to_string(exact_nu) +
                         " at precision " + std::to_string(precision));
  }

  // Reduce entry (i, j), j > i, modulo 2^a_i using column i.
  for (int j = 1; j < 3; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      const Integer d = Integer(1) << a[i];
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), basis[j][i].get_mpz_t(), d.get_mpz_t());
      for (int k = 0; k <= i; ++k) basis[j][k] -= q * basis[i][k];
      for (int k = 0; k < i; ++k) reduce_mod(basis[j][k], mod);
    }
  }

  // Primitive representative of the homothety class.
  int m = std::min({a[0], a[1], a[2]});
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < j; ++i)
      if (basis[j][i] != 0) m = std::min(m, nu2(basis[j][i]));

  Vertex v;
  for (int i = 0; i < 3; ++i) {
    v.a_[i] = a[i] - m;
    for (int j = 0; j < 3; ++j) v.h_[3 * i + j] = j >= i ? Integer(basis[j][i] >> m) : Integer(0);
  }
  return v;
}

int Vertex::label() const { return ((a_[0] + a_[1] + a_[2]) % 3 + 3) % 3; }

std::string Vertex::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < 3; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << h_[3 * i + j].get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator<(const Vertex& x, const Vertex& y) {
  if (x.a_ != y.a_) return x.a_ < y.a_;
  for (std::size_t i = 0; i < 9; ++i) {
    int c = cmp(x.h_[i], y.h_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

Vertex act(const QMat& g, const Vertex& v, const PadicConfig& cfg) {
  auto dv = val_p(g.det());
  if (!dv) throw std::domain_error("act: singular matrix");
  unsigned s = 0;
  for (const auto& x : g.entries()) s = std::max(s, x.e());
  const unsigned bits = cfg.precision;
  const Integer lam = lambda_2adic(bits);
  const Integer mod = Integer(1) << bits;
  std::array<Integer, 9> ge;
  for (std::size_t k = 0; k < 9; ++k) {
    const QuadInt& x = g.entries()[k];
    ge[k] = (x.a() + x.b() * lam) << (s - x.e());
    reduce_mod(ge[k], mod);
  }
  std::vector<Column> cols(3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      Integer acc = 0;
      for (int k = 0; k < 3; ++k) acc += ge[3 * i + k] * v(k, j);
      cols[j][i] = acc;
    }
  const auto& a = v.exponents();
  int exact = 3 * static_cast<int>(s) + *dv + a[0] + a[1] + a[2];
  return Vertex::from_columns(cols, exact, bits, cfg.guard);
}

Vertex act_with_retry(const QMat& g, const Vertex& v, PadicConfig cfg, int max_retries, int* retries) {
  for (int attempt = 0;; ++attempt) {
    try {
      return act(g, v, cfg);
    } catch (const PrecisionError&) {
      if (attempt >= max_retries) throw;
      if (retries) ++*retries;
      cfg.precision *= 2;
    }
  }
}

std::vector<Vertex> neighbors(const Vertex& v) {
  // Sublattices B(W + 2 Z2^3) for the nonzero proper subspaces W of F2^3.
  std::set<unsigned> seen_masks;
  std::vector<std::vector<unsigned>> subspaces;
  auto span_mask = [](const std::vector<unsigned>& gens) {
    unsigned mask = 0;
    for (unsigned c = 0; c < (1U << gens.size()); ++c) {
      unsigned x = 0;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (c >> i & 1U) x ^= gens[i];
      mask |= 1U << x;
    }
    return mask;
  };
  for (unsigned x = 1; x < 8; ++x) {
    if (seen_masks.insert(span_mask({x})).second) subspaces.push_back({x});
  }
  for (unsigned x = 1; x < 8; ++x)
    for (unsigned y = x + 1; y < 8; ++y)
      if (seen_masks.insert(span_mask({x, y})).second) subspaces.push_back({x, y});

  const auto& a = v.exponents();
  const int base_nu = a[0] + a[1] + a[2];
  const unsigned prec = static_cast<unsigned>(std::max({a[0], a[1], a[2]})) + 2 + Padic2::kDefaultGuard;
  auto image = [&](const std::array<int, 3>& w) {
    Column c;
    for (int i = 0; i < 3; ++i) c[i] = v(i, 0) * w[0] + v(i, 1) * w[1] + v(i, 2) * w[2];
    return c;
  };
  std::vector<Vertex> out;
  for (const auto& sub : subspaces) {
    std::vector<Column> cols;
    for (unsigned x : sub) cols.push_back(image({static_cast<int>(x & 1U), static_cast<int>(x >> 1 & 1U),
                                                 static_cast<int>(x >> 2 & 1U)}));
    cols.push_back(image({2, 0, 0}));
    cols.push_back(image({0, 2, 0}));
    cols.push_back(image({0, 0, 2}));
    int nu = base_nu + 3 - static_cast<int>(sub.size());
    out.push_back(Vertex::from_columns(cols, nu, prec, Padic2::kDefaultGuard));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool adjacent(const Vertex& x, const Vertex& y) {
  auto n = neighbors(x);
  return std::binary_search(n.begin(), n.end(), y);
}

int label_cocycle(const QMat& g) {
  auto v = val_p(g.det());
  if (!v) throw std::domain_error("label_cocycle: singular matrix");
  return ((*v % 3) + 3) % 3;
}

std::vector<Vertex> ball(unsigned radius) {
  std::set<Vertex> seen{Vertex()};
  std::vector<Vertex> frontier{Vertex()};
  for (unsigned r = 0; r < radius; ++r) {
    std::vector<Vertex> next;
    for (const auto& v : frontier)
      for (auto& n : neighbors(v))
        if (seen.insert(n).second) next.push_back(std::move(n));
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool LocalCheckReport::ok() const {
  return neighbor_count == 14 && neighbors_are_generator_images && tau_fixes_base && rho_moves_to_neighbor &&
         labels_split_7_7 && cocycle_holds && chamber_count == 21 && chambers_match_presentation &&
         chamber_labels_bijective && chamber_shift_rule && chamber_tau_rule;
}

LocalCheckReport local_check(const GeneratorSet& gen, const PadicConfig& cfg, unsigned cocycle_radius) {
  LocalCheckReport rep;
  const Vertex base;
  const auto nbrs = neighbors(base);
  rep.neighbor_count = nbrs.size();

  std::array<Vertex, 7> gv;
  std::array<Vertex, 7> giv;
  std::set<Vertex> images;
  for (int i = 0; i < 7; ++i) {
    gv[i] = act(gen.g[i], base, cfg);
    giv[i] = act(gen.g_inv[i], base, cfg);
    images.insert(gv[i]);
    images.insert(giv[i]);
  }
  rep.neighbors_are_generator_images = std::vector<Vertex>(images.begin(), images.end()) == nbrs;
  rep.tau_fixes_base = act(gen.tau, base, cfg) == base;
  Vertex rv = act(gen.rho, base, cfg);
  rep.rho_moves_to_neighbor = !(rv == base) && std::binary_search(nbrs.begin(), nbrs.end(), rv);

  int l1 = 0;
  int l2 = 0;
  for (const auto& n : nbrs) {
    if (n.label() == 1) ++l1;
    if (n.label() == 2) ++l2;
  }
  rep.labels_split_7_7 = l1 == 7 && l2 == 7;

  std::vector<QMat> movers{gen.rho, *inverse(gen.rho), gen.tau, *inverse(gen.tau)};
  for (int i = 0; i < 7; ++i) {
    movers.push_back(gen.g[i]);
    movers.push_back(gen.g_inv[i]);
  }
  rep.cocycle_holds = true;
  for (const auto& v : ball(cocycle_radius)) {
    for (const auto& x : movers) {
      ++rep.cocycle_checks;
      rep.cocycle_holds = rep.cocycle_holds && act(x, v, cfg).label() == (v.label() + label_cocycle(x)) % 3;
    }
  }

  // Chambers through the base vertex: mutually adjacent pairs of neighbors.
  using Chamber = std::set<Vertex>;
  std::set<Chamber> all;
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (adjacent(nbrs[i], nbrs[j])) all.insert(Chamber{base, nbrs[i], nbrs[j]});
  rep.chamber_count = all.size();

  const TrianglePresentation tp = triangle_presentation(gen);
  std::map<Triple, Chamber> chamber_of;
  for (const auto& t : tp.triples) {
    auto [i, j, k] = t;
    chamber_of[t] = Chamber{gv[i], base, giv[k]};
  }
  std::set<Chamber> from_f;
  bool labels_ok = true;
  for (const auto& [t, c] : chamber_of) {
    from_f.insert(c);
    std::set<int> labels;
    for (const auto& v : c) labels.insert(v.label());
    labels_ok = labels_ok && c.size() == 3 && labels.size() == 3;
  }
  rep.chambers_match_presentation = from_f.size() == tp.triples.size() && from_f == all;
  rep.chamber_labels_bijective = labels_ok;

  auto image_of = [&](const QMat& g, const Chamber& c) {
    Chamber out;
    for (const auto& v : c) out.insert(act(g, v, cfg));
    return out;
  };
  rep.chamber_shift_rule = true;
  rep.chamber_tau_rule = true;
  for (const auto& [t, c] : chamber_of) {
    auto [i, j, k] = t;
    auto shifted = chamber_of.find(Triple{j, k, i});
    rep.chamber_shift_rule = rep.chamber_shift_rule && shifted != chamber_of.end() &&
                             image_of(gen.g_inv[i], c) == shifted->second;
    auto doubled = chamber_of.find(Triple{2 * i % 7, 2 * j % 7, 2 * k % 7});
    rep.chamber_tau_rule =
        rep.chamber_tau_rule && doubled != chamber_of.end() && image_of(gen.tau, c) == doubled->second;
  }
  return rep;
}

int distance_from_base(const Vertex& v) {
  // Elementary divisors 2^e1 | 2^e2 | 2^e3 from the gcds of entries and of
  // 2x2 minors; the distance is e3 - e1.
  auto val = [](const Integer& x) { return x == 0 ? std::numeric_limits<int>::max() : nu2(x); };
  int m1 = std::numeric_limits<int>::max();
  int m2 = std::numeric_limits<int>::max();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m1 = std::min(m1, val(v(i, j)));
  for (int r0 = 0; r0 < 3; ++r0)
    for (int r1 = r0 + 1; r1 < 3; ++r1)
      for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1)
          m2 = std::min(m2, val(Integer(v(r0, c0) * v(r1, c1) - v(r0, c1) * v(r1, c0))));
  const auto& a = v.exponents();
  return a[0] + a[1] + a[2] - m2 - m1;
}

TransitivityReport transitivity_certificate(const GeneratorSet& gen, unsigned radius, const FiniteGroup* filter,
                                            const PadicConfig& cfg, unsigned threads) {
  TransitivityReport rep;
  rep.radius = radius;
  rep.filtered = filter != nullptr;
  const auto target = ball(radius);
  rep.ball_size = target.size();

  // Every word reaching w L0 is w tau^i up to scalars, so the successors of
  // a vertex are w tau^i rho^{+-1} L0. Each step moves one edge.
  const QMat tau_inv = *inverse(gen.tau);
  const QMat rho_inv = *inverse(gen.rho);
  struct Step {
    QMat m;
    unsigned letters;
  };
  std::vector<Step> steps;
  for (const QMat* t : {static_cast<const QMat*>(nullptr), &gen.tau, &tau_inv})
    for (const QMat* r : {&gen.rho, &rho_inv}) steps.push_back({t ? *t * *r : *r, t ? 2U : 1U});
  const R1Mat tau_bar = reduce_matrix(gen.tau);

  struct Rep {
    QMat w;
    R1Mat bar;
    unsigned letters;
  };
  std::map<Vertex, Rep> reached;
  reached.emplace(Vertex(), Rep{QMat::identity(), R1Mat::identity(), 0});
  std::vector<Vertex> frontier{Vertex()};
  const int region = static_cast<int>(radius) + kTransitivitySlack;

  auto covered_count = [&] {
    std::size_t n = 0;
    for (const auto& v : target) n += reached.count(v);
    return n;
  };

  const unsigned budget = transitivity_step_budget(radius);
  unsigned depth = 0;
  while (depth < budget && !frontier.empty() && covered_count() < target.size()) {
    ++depth;
    std::vector<std::pair<const Rep*, std::size_t>> jobs;
    for (const auto& v : frontier)
      for (std::size_t s = 0; s < steps.size(); ++s) jobs.emplace_back(&reached.at(v), s);
    std::vector<int> retries(jobs.size(), 0);
    auto results = parallel_map(jobs.size(), threads, [&](std::size_t n) {
      const auto& [rp, s] = jobs[n];
      QMat w = rp->w * steps[s].m;
      Vertex v = act_with_retry(w, Vertex(), cfg, 3, &retries[n]);
      return std::make_pair(std::move(v), std::move(w));
    });
    for (int r : retries) rep.precision_retries += r;
    rep.words_explored += results.size();
    std::vector<Vertex> next;
    for (std::size_t n = 0; n < results.size(); ++n) {
      auto& [v, w] = results[n];
      if (reached.count(v) || distance_from_base(v) > region) continue;
      const Rep& parent = *jobs[n].first;
      const Step& st = steps[jobs[n].second];
      reached.emplace(v, Rep{std::move(w), parent.bar * reduce_matrix(st.m), parent.letters + st.letters});
      next.push_back(v);
    }
    frontier = std::move(next);
  }
  rep.covered = covered_count();
  rep.transitive = rep.covered == target.size();
  for (const auto& v : target) {
    auto it = reached.find(v);
    if (it != reached.end()) rep.word_length_used = std::max(rep.word_length_used, it->second.letters);
  }

  if (filter) {
    rep.tau_cosets_distinct = !filter->contains(tau_bar) && !filter->contains(tau_bar * tau_bar);
    const std::array<R1Mat, 3> tau_pows{R1Mat::identity(), tau_bar, tau_bar * tau_bar};
    for (const auto& v : target) {
      auto it = reached.find(v);
      if (it == reached.end()) continue;
      int n = 0;
      for (const auto& tp : tau_pows) n += filter->contains(it->second.bar * tp) ? 1 : 0;
      if (n == 1) ++rep.filter_unique;
    }
    rep.simply_transitive = rep.transitive && rep.tau_cosets_distinct && rep.filter_unique == target.size();
  }
  return rep;
}

}  // namespace cmsz
