// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "culab/cli.hpp"

using namespace culab;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok) {
  std::cout << "criterion " << n << (ok ? ": pass — " : ": FAIL — ") << what << "\n";
  if (!ok) ++failures;
}

std::vector<Rat> dyadics(std::int64_t value_bound, std::int64_t denom_bound) {
  std::vector<Rat> out;
  for (std::int64_t den = 1; den <= denom_bound; den *= 2)
    for (std::int64_t num = 0; num <= value_bound * den; ++num) out.push_back(Rat(num, den));
  return out;
}

// 1. gamma-completion of the dyadic compacts is the softened dyadic handle
bool criterion1() {
  auto V = make_softened(2);
  FragParams p;
  p.denom_bound = 16;
  p.value_bound = 8;
  WSemigroupDescriptor W = w_compact_part(V, p);
  SgPtr G = gamma_completion(W);
  auto* VG = dynamic_cast<const ValueSemigroup*>(G.get());
  if (!VG || VG->base() != 2 || !VG->has_dense_soft()) return false;
  // the isomorphism sends the compact q to alpha(q); compare everything
  for (const Rat& x : dyadics(8, 16))
    for (const Rat& y : dyadics(8, 16)) {
      Element ax = gamma_alpha(W, G, V->compact(x));
      Element ay = gamma_alpha(W, G, V->compact(y));
      if (G->leq(ax, ay) != (x <= y)) return false;
      if (G->way_below(ax, ay) != (x <= y)) return false;  // compacts: << is <=
      if (x + y <= Rat(8) && !G->eq(G->add(ax, ay), VG->compact(x + y))) return false;
    }
  return true;
}

// 2. direct limits and the mixed order laws
bool criterion2() {
  auto N = make_nbar();
  SgPtr L2 = stationary_limit(N, MorphismDescriptor::scale_by(N, Rat(2)));
  auto* V2 = dynamic_cast<const ValueSemigroup*>(L2.get());
  if (!V2 || V2->base() != 2 || !V2->has_dense_soft()) return false;

  auto D = make_dimension_drop();
  SgPtr L1 = stationary_limit(D, MorphismDescriptor::integration(D));
  auto* V1 = dynamic_cast<const ValueSemigroup*>(L1.get());
  if (!V1 || V1->base() != 1 || !V1->has_dense_soft()) return false;

  for (std::int64_t n = 0; n <= 6; ++n)
    for (std::int64_t num = 1; num <= 72; ++num)
      for (std::int64_t den = 1; den <= 12; ++den) {
        Rat q(num, den);
        if (Rat(6) < q) continue;
        Element cn = V1->compact(Rat(n)), sq = V1->soft(ExtValue(q));
        if (V1->leq(sq, cn) != (q <= Rat(n))) return false;
        if (V1->leq(cn, sq) != (Rat(n) < q)) return false;
        if (!V1->eq(V1->add(cn, sq), V1->soft(ExtValue(q + Rat(n))))) return false;
      }
  return true;
}

// 3. tau completion of ([0,inf], <_1)
bool criterion3() {
  FragParams p;
  p.denom_bound = 12;
  p.value_bound = 6;
  WSemigroupDescriptor Q = tau_interval_input(p);
  SgPtr T = tau_completion(Q);
  auto* V = dynamic_cast<const ValueSemigroup*>(T.get());
  if (!V || V->has_dense_soft() == false) return false;
  for (std::int64_t den = 1; den <= 12; ++den)
    for (std::int64_t num = 0; num <= 6 * den; ++num) {
      Rat q(num, den);
      if (!V->in_compact_part(q)) return false;        // compacts: all of [0,inf)
      if (!V->is_compact(V->compact(q))) return false;
      if (!q.is_zero() && V->is_compact(V->soft(ExtValue(q)))) return false;
    }
  return !V->is_compact(V->top());
}

// 4. axiom suite with the known failures
bool criterion4() {
  struct Case {
    SgPtr S;
    FragParams p;
  };
  auto zs = make_zstable(1, 2, {{Rat(1), Rat(1)}});
  std::vector<Case> cases;
  {
    FragParams p;
    p.value_bound = 2;
    p.denom_bound = 3;
    cases.push_back({make_softened(1), p});
  }
  {
    FragParams p;
    p.value_bound = 2;
    p.denom_bound = 4;
    cases.push_back({make_softened(2), p});
  }
  {
    FragParams p;
    p.value_bound = 3;
    cases.push_back({make_nbar(), p});
  }
  {
    FragParams p;
    p.value_bound = 2;
    p.denom_bound = 2;
    cases.push_back({make_dimension_drop(), p});
  }
  {
    FragParams p;
    p.value_bound = 2;
    cases.push_back({zs, p});
  }
  for (const auto& c : cases) {
    Fragment f = Fragment::enumerated(c.S, c.p);
    for (Axiom ax :
         {Axiom::O1, Axiom::O2, Axiom::O3, Axiom::O4, Axiom::O5, Axiom::O6, Axiom::Riesz})
      if (check_axiom(*c.S, ax, f, c.p).verdict != Verdict::Pass) return false;
  }

  auto T = make_zero_infinity();
  AxiomReport wc = check_axiom(*T, Axiom::WC, Fragment::enumerated(T));
  if (wc.verdict != Verdict::Fail || wc.witness.size() != 3) return false;
  if (!T->eq(wc.witness[0], T->at(1)) || !T->eq(wc.witness[1], T->at(0)) ||
      !T->eq(wc.witness[2], T->at(1)))
    return false;

  auto V = make_villadsen_gap();
  AxiomReport au = check_almost_unperforation(*V, Fragment::enumerated(V), 6);
  if (au.verdict != Verdict::Fail || au.witness.size() != 2) return false;
  // the reported witness replays at its reported multiplier
  {
    int n = std::stoi(au.note.substr(au.note.find('=') + 1));
    Element rs = au.witness[0], rt = au.witness[1];
    Element ns = V->zero(), nt = V->zero();
    for (int i = 0; i < n; ++i) {
      ns = V->add(ns, rs);
      nt = V->add(nt, rt);
    }
    if (!V->leq(V->add(ns, rs), nt) || V->leq(rs, rt)) return false;
  }
  // replay: 4s <= 3t yet s is not below t for s = (1,1), t = (2,0)
  Element s = V->pair(1, 1), t = V->pair(2, 0);
  Element s4 = V->add(V->add(s, s), V->add(s, s)), t3 = V->add(t, V->add(t, t));
  if (!V->leq(s4, t3) || V->leq(s, t)) return false;

  auto G = make_glued_three_point();
  FragParams gp;
  gp.value_bound = 2;
  Fragment gf = Fragment::enumerated(G, gp);
  AxiomReport o6p = check_axiom(*G, Axiom::O6plus, gf);
  if (o6p.verdict != Verdict::Fail || o6p.witness.size() < 3) return false;
  return G->leq(o6p.witness[0], G->add(o6p.witness[1], o6p.witness[2]));  // premise replays
}

// 5. spectral layer cake equals the normalized trace
bool criterion5() {
  auto N = make_nbar();
  auto fixture = spectral(3, {Rat(1, 2), Rat(1, 3), Rat(0)});
  if (!(layer_cake_trace(fixture, Functional::scaling(N, ExtValue(Rat(1, 3)))) == Rat(5, 18)))
    return false;
  if (!(spectral_dtau(fixture) == Rat(2, 3))) return false;

  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dim = 1 + rng() % 6;
    std::vector<Rat> eigs;
    Rat trace(0);
    for (std::size_t i = 0; i < dim; ++i) {
      std::int64_t den = 1 + rng() % 20;
      Rat v(rng() % (5 * den), den);
      eigs.push_back(v);
      trace = trace + v;
    }
    auto a = spectral(dim, eigs);
    Functional lam = Functional::scaling(N, ExtValue(Rat(1, static_cast<std::int64_t>(dim))));
    if (!(layer_cake_trace(a, lam) == trace / Rat(static_cast<std::int64_t>(dim)))) return false;
    std::size_t rank = 0;
    for (const auto& v : eigs)
      if (!v.is_zero()) ++rank;
    if (!(spectral_dtau(a) == Rat(static_cast<std::int64_t>(rank),
                                  static_cast<std::int64_t>(dim))))
      return false;
  }
  return true;
}

// 6. pl layer cake equals the direct integral; dtau is the support measure
bool criterion6() {
  std::mt19937 rng(2025);
  for (int trial = 0; trial < 100; ++trial) {
    std::int64_t grid = 3 + rng() % 6;
    std::vector<Rat> bps{Rat(0)}, vals;
    for (std::int64_t i = 1; i < grid; ++i) bps.push_back(Rat(i, grid));
    bps.push_back(Rat(1));
    for (std::size_t i = 0; i < bps.size(); ++i) {
      std::int64_t den = 1 + rng() % 10;
      vals.push_back(Rat(rng() % (3 * den), den));
    }
    PLFunction f = pl(bps, vals);
    RationalMeasure mu{Rat(rng() % 3, 1 + rng() % 5), {}};
    std::size_t n_atoms = rng() % 4;  // at most 3 atoms
    for (std::size_t k = 0; k < n_atoms; ++k) {
      std::int64_t den = 1 + rng() % 12;
      mu.atoms.push_back({Rat(rng() % (den + 1), den), Rat(rng() % 4, 1 + rng() % 3)});
    }
    if (!(pl_layer_cake(f, mu) == pl_integral(f, mu))) return false;
    if (!(pl_dtau(f, mu) == measure_of(mu, supp_o(f)))) return false;
  }
  return true;
}

// 7. realization of scaling targets
bool criterion7() {
  for (std::int64_t m : {1, 2}) {
    auto S = make_softened(m);
    for (std::int64_t den = 1; den <= 12; ++den)
      for (std::int64_t num = 0; num <= 8 * den; ++num) {
        RankFunction f;
        f.coeff = ExtValue(Rat(num, den));
        if (!rank_of(S, alpha(S, f)).eq(f)) return false;
      }
  }
  return true;
}

// 8. quotient of nbar^2 by the first-coordinate ideal is nbar
bool criterion8() {
  auto N = make_nbar();
  auto P = make_product({N, N});
  Element gen = P->tuple({N->compact(Rat(1)), N->zero()});
  Ideal I = ideal_generated(P, gen);
  auto Q = quotient(P, I);

  std::vector<Element> nvals;
  for (std::int64_t n = 0; n <= 8; ++n) nvals.push_back(N->compact(Rat(n)));
  nvals.push_back(N->top());
  auto lift = [&](const Element& x) { return Q->from_ambient(P->tuple({N->zero(), x})); };
  for (const auto& x : nvals)
    for (const auto& y : nvals) {
      if (N->leq(x, y) != Q->leq(lift(x), lift(y))) return false;
      if (N->way_below(x, y) != Q->way_below(lift(x), lift(y))) return false;
      if (!Q->eq(Q->add(lift(x), lift(y)), lift(N->add(x, y)))) return false;
    }

  // <=_I characterization: a <= b + c for some c in the ideal fragment
  FragParams p;
  p.value_bound = 8;
  std::vector<Element> frag = P->enumerate(p);
  std::vector<Element> ideal_frag;
  for (const auto& c : frag)
    if (I.contains(c)) ideal_frag.push_back(c);
  for (const auto& a : frag)
    for (const auto& b : frag) {
      bool quotient_leq = Q->leq(Q->from_ambient(a), Q->from_ambient(b));
      bool witnessed = false;
      for (const auto& c : ideal_frag)
        if (P->leq(a, P->add(b, c))) {
          witnessed = true;
          break;
        }
      if (quotient_leq != witnessed) return false;
    }
  return true;
}

// 9. products, principal ultraproducts, and the sequence-product scale
bool criterion9() {
  auto N = make_nbar();
  auto P = make_product({N, N});
  std::vector<Element> nvals;
  for (std::int64_t n = 0; n <= 8; ++n) nvals.push_back(N->compact(Rat(n)));
  nvals.push_back(N->top());
  for (const auto& a1 : nvals)
    for (const auto& a2 : nvals)
      for (const auto& b1 : nvals)
        for (const auto& b2 : nvals) {
          Element a = P->tuple({a1, a2}), b = P->tuple({b1, b2});
          if (P->leq(a, b) != (N->leq(a1, b1) && N->leq(a2, b2))) return false;
          if (!P->eq(P->add(a, b), P->tuple({N->add(a1, b1), N->add(a2, b2)}))) return false;
        }

  auto S1 = make_softened(1);
  Ultrafilter U;
  U.n = 2;
  U.sets = {0b01, 0b11};  // principal at index 0
  auto UP = ultraproduct({N, S1}, U);
  auto* amb = dynamic_cast<const ProductSg*>(&UP->ambient());
  if (!amb) return false;
  auto ulift = [&](const Element& x) {
    return UP->from_ambient(amb->tuple({x, S1->zero()}));
  };
  for (std::int64_t n = 0; n <= 6; ++n)
    for (std::int64_t m = 0; m <= 6; ++m) {
      if (N->leq(N->compact(Rat(n)), N->compact(Rat(m))) !=
          UP->leq(ulift(N->compact(Rat(n))), ulift(N->compact(Rat(m)))))
        return false;
    }
  // the non-selected factor is crushed
  Element off = UP->from_ambient(amb->tuple({N->zero(), S1->compact(Rat(2))}));
  if (!UP->eq(off, UP->zero())) return false;

  auto SQ = make_seq_product_nbar();
  Element g = SQ->affine_desc(1, 0);
  for (std::int64_t n = 1; n <= 64; ++n)
    if (SQ->leq(g, SQ->constant_desc(ExtValue(Rat(n))))) return false;
  return !SQ->scale_contains(g);
}

// 10. elementary detection
bool criterion10() {
  auto N = make_nbar();
  ElementaryReport rn = detect_elementary(N);
  if (!rn.found) return false;
  for (std::int64_t n = 0; n <= 8; ++n)
    if (!(evaluate(*rn.lambda, N->compact(Rat(n))) == ExtValue(Rat(n)))) return false;
  if (!evaluate(*rn.lambda, N->top()).is_inf()) return false;

  auto P = make_product({N, N});
  ElementaryReport rp = detect_elementary(P);
  if (!rp.found) return false;
  // the witness is a coordinate ideal: lambda counts along one axis and is
  // infinite off it
  Element u0 = P->tuple({N->compact(Rat(1)), N->zero()});
  Element u1 = P->tuple({N->zero(), N->compact(Rat(1))});
  ExtValue v0 = evaluate(*rp.lambda, u0), v1 = evaluate(*rp.lambda, u1);
  if (v0.is_inf() == v1.is_inf()) return false;
  Element axis = v0.is_inf() ? u1 : u0, off = v0.is_inf() ? u0 : u1;
  Element acc = P->zero();
  for (std::int64_t n = 0; n <= 8; ++n) {
    if (!(evaluate(*rp.lambda, acc) == ExtValue(Rat(n)))) return false;
    if (!rp.ideal->contains(acc)) return false;
    acc = P->add(acc, axis);
  }
  if (!evaluate(*rp.lambda, P->infinity_of(axis)).is_inf()) return false;
  if (!rp.ideal->contains(P->infinity_of(axis))) return false;
  if (!evaluate(*rp.lambda, off).is_inf() || rp.ideal->contains(off)) return false;

  return !detect_elementary(make_softened(1), 16).found;
}

// 11. Grothendieck interpolation
bool criterion11() {
  auto V2 = make_softened(2);
  Fragment dy;
  dy.sg = V2;
  for (const Rat& q : dyadics(8, 8)) dy.elements.push_back(V2->compact(q));
  GrothendieckResult g = grothendieck_interpolation(dy);
  if (g.group.name != "Z[1/2]" || g.interpolation.verdict != Verdict::Pass) return false;

  auto V = make_villadsen_gap();
  Fragment cone;
  cone.sg = V;
  cone.elements.push_back(V->zero());
  for (std::int64_t r = 2; r <= 4; ++r)
    for (std::int64_t e = -2; e <= 2; ++e) cone.elements.push_back(V->pair(r, e));
  GrothendieckResult gv = grothendieck_interpolation(cone);
  if (gv.interpolation.verdict != Verdict::Fail || gv.interpolation.witness.size() != 8)
    return false;
  return true;
}

// 12. concrete classes embed in order
bool criterion12() {
  auto N = make_nbar();
  auto H = make_lsc_interval(make_softened(1));
  std::mt19937 rng(4096);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t da = 1 + rng() % 5, db = 1 + rng() % 5;
    std::vector<Rat> ea, eb;
    for (std::size_t i = 0; i < da; ++i) ea.push_back(Rat(rng() % 3, 1 + rng() % 4));
    for (std::size_t i = 0; i < db; ++i) eb.push_back(Rat(rng() % 3, 1 + rng() % 4));
    auto a = spectral(da, ea), b = spectral(db, eb);
    if (spectral_cuntz_leq(a, b) != N->leq(to_cuntz_class(a, N), to_cuntz_class(b, N)))
      return false;
  }
  for (int trial = 0; trial < 200; ++trial) {
    auto rnd = [&]() {
      std::int64_t den = 2 + rng() % 10;
      std::int64_t lo = rng() % den;
      std::int64_t hi = lo + 1 + rng() % (den - lo);
      PLFunction t = pl_tent(Rat(lo, den), Rat(hi, den));
      if (rng() % 3 == 0) {
        std::int64_t d2 = 2 + rng() % 10;
        std::int64_t l2 = rng() % d2;
        t = pl_add(t, pl_tent(Rat(l2, d2), Rat(l2 + 1 + rng() % (d2 - l2), d2)));
      }
      return t;
    };
    PLFunction f = rnd(), g = rnd();
    if (pl_cuntz_leq(f, g) != H->leq(to_cuntz_class(f, H), to_cuntz_class(g, H))) return false;
  }
  return true;
}

}  // namespace

int main() {
  report(1, "gamma completion of dyadic compacts is the softened dyadic semigroup", criterion1());
  report(2, "direct limits recognized; mixed order laws hold exhaustively", criterion2());
  report(3, "tau completion of ([0,inf], <_1) with compacts the finite part", criterion3());
  report(4, "axiom suite passes on the catalog; known failures reproduce", criterion4());
  report(5, "spectral layer cake equals the normalized trace on 100 random elements",
         criterion5());
  report(6, "pl layer cake equals the direct integral on 100 random pairs", criterion6());
  report(7, "rank realization is exact for all slopes up to 8, denominators up to 12",
         criterion7());
  report(8, "quotient by the first-coordinate ideal is nbar; <=_I replays by brute force",
         criterion8());
  report(9, "products, principal ultraproducts, and the sequence-product scale", criterion9());
  report(10, "elementary sub-Cu-semigroups detected exactly where expected", criterion10());
  report(11, "Grothendieck interpolation passes on Z[1/2], fails on the Villadsen cone",
         criterion11());
  report(12, "concrete-to-abstract class maps are order-embeddings on random pairs",
         criterion12());
  if (failures) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria pass\n";
  return 0;
}
