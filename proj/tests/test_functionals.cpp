#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "culab/functionals.hpp"

using namespace culab;

namespace {

ExtValue ev(std::int64_t n) { return ExtValue(Rat(n)); }
ExtValue ev(std::int64_t n, std::int64_t d) { return ExtValue(Rat(n, d)); }

}  // namespace

TEST_CASE("functional spaces per kind") {
  auto Z1 = make_softened(1);
  auto fam = functional_space(Z1);
  REQUIRE(fam.size() == 3);
  CHECK(fam[0].form == Functional::Form::Zero);
  CHECK(fam[1].form == Functional::Form::Scaling);
  CHECK(fam[2].form == Functional::Form::InfinityOnNonzero);

  // the normalized functional is the scaling with lambda(c_1) = 1, and it is
  // unique: additivity on compacts pins t, sup-preservation pins the softs
  const Functional& lam = fam[1];
  CHECK(evaluate(lam, Z1->compact(Rat(1))) == ev(1));
  for (std::int64_t n = 0; n <= 6; ++n)
    CHECK(evaluate(lam, Z1->compact(Rat(n))) == ev(n));
  CHECK(evaluate(lam, Z1->soft(ev(5, 2))) == ev(5, 2));
  CHECK(evaluate(lam, Z1->top()).is_inf());

  auto N = make_nbar();
  auto famN = functional_space(N);
  for (std::int64_t t = 0; t <= 3; ++t) {
    Functional lt = Functional::scaling(N, ev(t));
    for (std::int64_t n = 0; n <= 5; ++n)
      CHECK(evaluate(lt, N->compact(Rat(n))) == ev(t * n));
  }

  auto Z = make_zstable(1, 2, {{Rat(1), Rat(1)}});
  auto famZ = functional_space(Z);
  REQUIRE(famZ.size() == 4);  // zero, two vertex weights, infinity

  CHECK_THROWS_WITH_AS(functional_space(make_lsc_interval(make_softened(1))),
                       doctest::Contains("no functional parameterization"), CuError);
}

TEST_CASE("evaluation is exact and additive") {
  auto Z1 = make_softened(1);
  Functional lam = Functional::scaling(Z1, ev(1));
  CHECK(evaluate(lam, Z1->soft(ev(5, 2))) == ev(5, 2));
  CHECK(evaluate(Functional::zero(Z1), Z1->soft(ExtValue::infinity())) == ev(0));

  FragParams p;
  p.value_bound = 3;
  p.denom_bound = 3;
  auto frag = Z1->enumerate(p);
  Functional half = Functional::scaling(Z1, ev(1, 2));
  for (const auto& a : frag)
    for (const auto& b : frag)
      CHECK(evaluate(half, Z1->add(a, b)) == evaluate(half, a) + evaluate(half, b));

  Functional inf0 = Functional::infinity_on_nonzero(Z1);
  CHECK(evaluate(inf0, Z1->zero()) == ev(0));
  CHECK(evaluate(inf0, Z1->compact(Rat(1))).is_inf());

  // wrong-handle elements are refused
  auto N = make_nbar();
  CHECK_THROWS_AS(evaluate(lam, N->compact(Rat(1))), CuError);
}

TEST_CASE("ideal-extended functional on a product") {
  auto N = make_nbar();
  auto P = make_product({N, N});
  Functional first = Functional::vertex_weights(P, {ev(1), ev(0)});
  Ideal I = ideal_generated(P, P->tuple({N->compact(Rat(1)), N->zero()}));
  Functional ext = extend_from_ideal(first, I);
  CHECK(ext.form == Functional::Form::IdealExtended);
  CHECK(evaluate(ext, P->tuple({N->zero(), N->compact(Rat(1))})).is_inf());
  CHECK(evaluate(ext, P->tuple({N->compact(Rat(3)), N->zero()})) == ev(3));
  CHECK(evaluate(ext, P->tuple({N->top(), N->zero()})).is_inf());

  // extension over the full ideal is the functional itself
  Functional same = extend_from_ideal(first, full_ideal(P));
  CHECK(same.form == Functional::Form::VertexWeights);

  // extension of zero from the zero ideal is infinity-on-nonzero
  Functional infy = extend_from_ideal(Functional::zero(P), zero_ideal(P));
  CHECK(infy.form == Functional::Form::InfinityOnNonzero);

  auto M = make_softened(1);
  CHECK_THROWS_WITH_AS(extend_from_ideal(Functional::scaling(M, ev(1)), I),
                       doctest::Contains("different semigroups"), CuError);
}

TEST_CASE("rank functions in closed form") {
  auto Z1 = make_softened(1);
  RankFunction r = rank_of(Z1, Z1->soft(ev(2)));
  CHECK(r.at(ev(1)) == ev(2));
  CHECK(r.at(ev(1, 2)) == ev(1));
  CHECK(r.at(ev(0)) == ev(0));

  RankFunction rz = rank_of(Z1, Z1->zero());
  CHECK(rz.at(ExtValue::infinity()) == ev(0));

  auto Z = make_zstable(1, 2, {{Rat(1), Rat(1)}});
  RankFunction rc = rank_of(Z, Z->comp({1}));
  CHECK(rc.at({ev(1), ev(0)}) == ev(1));
  CHECK(rc.at({ev(1), ev(1)}) == ev(2));
  CHECK(rc.at({ev(1, 2), ev(1, 3)}) == ev(5, 6));

  // additivity: rank of a sum is the pointwise sum of ranks
  FragParams p;
  p.value_bound = 3;
  p.denom_bound = 2;
  auto frag = Z1->enumerate(p);
  std::vector<ExtValue> samples{ev(0), ev(1, 2), ev(1), ev(3), ExtValue::infinity()};
  for (const auto& a : frag)
    for (const auto& b : frag) {
      RankFunction ra = rank_of(Z1, a), rb = rank_of(Z1, b), rs = rank_of(Z1, Z1->add(a, b));
      for (const auto& t : samples) CHECK(rs.at(t) == ra.at(t) + rb.at(t));
    }
}

TEST_CASE("realization: alpha inverts the rank map") {
  auto Z1 = make_softened(1);
  RankFunction f;
  f.coeff = ev(2);
  Element x = alpha(Z1, f);
  CHECK(Z1->eq(x, Z1->soft(ev(2))));
  CHECK(rank_of(Z1, x).eq(f));

  // the rank of a compact realizes as the soft element of the same value
  RankFunction g = rank_of(Z1, Z1->compact(Rat(1)));
  Element y = alpha(Z1, g);
  CHECK(Z1->eq(y, Z1->soft(ev(1))));
  CHECK_FALSE(Z1->eq(y, Z1->compact(Rat(1))));
  CHECK(rank_of(Z1, y).eq(g));

  RankFunction z;  // zero target
  CHECK(Z1->eq(alpha(Z1, z), Z1->zero()));
  RankFunction top;
  top.coeff = ExtValue::infinity();
  CHECK(Z1->eq(alpha(Z1, top), Z1->top()));

  // monotone in the target
  for (std::int64_t n = 1; n <= 4; ++n)
    for (std::int64_t m = n; m <= 4; ++m) {
      RankFunction fn, fm;
      fn.coeff = ev(n, 2);
      fm.coeff = ev(m, 2);
      CHECK(Z1->leq(alpha(Z1, fn), alpha(Z1, fm)));
    }

  auto Z = make_zstable(1, 2, {{Rat(1), Rat(1)}});
  RankFunction fw;
  fw.kind = RankFunction::Kind::WeightLinear;
  fw.coeffs = {ev(1), ev(1)};
  Element w = alpha(Z, fw);
  CHECK(rank_of(Z, w).eq(fw));
  fw.coeffs = {ev(1), ev(0)};
  CHECK_THROWS_WITH_AS(alpha(Z, fw), doctest::Contains("strictly positive"), CuError);
  RankFunction wrong;  // scaling-shaped target against a weight family
  wrong.coeff = ev(1);
  CHECK_THROWS_AS(alpha(Z, wrong), CuError);

  // nbar has no finite soft elements to realize a finite rank strictly
  auto N = make_nbar();
  RankFunction one;
  one.coeff = ev(1);
  CHECK_THROWS_WITH_AS(alpha(N, one), doctest::Contains("no soft element"), CuError);
}

TEST_CASE("regularization fits the envelope from compacts") {
  auto N = make_nbar();
  // zero on finite elements, inflated at the top: the sup rule kills the top
  Functional r1 = regularize(N, [&](const Element& a) {
    return ValueSemigroup::value_of(a).is_inf() ? ev(5) : ev(0);
  });
  CHECK(r1.form == Functional::Form::Zero);
  CHECK(evaluate(r1, N->top()) == ev(0));

  // an actual functional passes through unchanged
  Functional lam = Functional::scaling(N, ev(2));
  Functional r2 = regularize(N, [&](const Element& a) { return evaluate(lam, a); });
  FragParams p;
  p.value_bound = 4;
  for (const auto& a : N->enumerate(p)) CHECK(evaluate(r2, a) == evaluate(lam, a));

  // inflation on the soft part is flattened back to the scaling
  auto Z1 = make_softened(1);
  Functional r3 = regularize(Z1, [&](const Element& a) {
    ExtValue v = ValueSemigroup::value_of(a);
    if (ValueSemigroup::compact_tagged(a)) return v;
    return v + ev(1);
  });
  CHECK(r3.form == Functional::Form::Scaling);
  CHECK(evaluate(r3, Z1->soft(ev(1, 2))) == ev(1, 2));

  CHECK_THROWS_WITH_AS(regularize(N, [&](const Element& a) {
                         ExtValue v = ValueSemigroup::value_of(a);
                         return v.is_zero() ? ev(1) : ev(0);  // decreasing on compacts
                       }),
                       doctest::Contains("not order-preserving"), CuError);
}

TEST_CASE("elementary-ideal detection") {
  auto N = make_nbar();
  ElementaryReport rn = detect_elementary(N);
  REQUIRE(rn.found);
  CHECK(evaluate(*rn.lambda, N->compact(Rat(1))) == ev(1));
  CHECK(evaluate(*rn.lambda, N->compact(Rat(7))) == ev(7));
  CHECK(rn.ideal->contains(N->top()));  // the ideal is all of the handle

  auto Z1 = make_softened(1);
  ElementaryReport rs = detect_elementary(Z1);
  CHECK_FALSE(rs.found);
  CHECK(rs.scanned_denom_bound == 16);

  auto P = make_product({N, N});
  ElementaryReport rp = detect_elementary(P);
  REQUIRE(rp.found);
  auto NN = rp.lambda->sg;
  auto* Pp = dynamic_cast<const ProductSg*>(NN.get());
  REQUIRE(Pp);
  Element on_ideal = Pp->tuple({N->compact(Rat(5)), N->zero()});
  Element off_ideal = Pp->tuple({N->zero(), N->compact(Rat(1))});
  CHECK(evaluate(*rp.lambda, on_ideal) == ev(5));
  CHECK(evaluate(*rp.lambda, off_ideal).is_inf());
  CHECK(rp.ideal->contains(on_ideal));
  CHECK_FALSE(rp.ideal->contains(off_ideal));

  // lemma replay: the functional is an order-isomorphism on the ideal part
  FragParams p;
  p.value_bound = 6;
  for (const auto& a : P->enumerate(p)) {
    if (!rp.ideal->contains(a)) continue;
    for (const auto& b : P->enumerate(p)) {
      if (!rp.ideal->contains(b)) continue;
      CHECK(P->leq(a, b) == (evaluate(*rp.lambda, a) <= evaluate(*rp.lambda, b)));
    }
  }
}
