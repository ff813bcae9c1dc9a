#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "culab/concrete.hpp"

using namespace culab;

namespace {

Rat rq(std::int64_t n, std::int64_t d) { return Rat(n, d); }

RationalMeasure lebesgue() { return RationalMeasure{Rat(1), {}}; }

}  // namespace

TEST_CASE("spectral comparison is rank comparison") {
  auto a = spectral(2, {Rat(1), rq(1, 2)});
  auto b = spectral(2, {Rat(3), Rat(0)});
  CHECK_FALSE(spectral_cuntz_leq(a, b));  // rank 2 vs 1
  CHECK(spectral_cuntz_leq(b, a));

  auto z = spectral(3, {Rat(0), Rat(0), Rat(0)});
  CHECK(spectral_cuntz_leq(z, b));
  CHECK(spectral_cuntz_leq(z, z));

  // scaling is a Cuntz equivalence
  auto c = spectral(2, {rq(1, 7), Rat(0)});
  CHECK(spectral_cuntz_leq(b, c));
  CHECK(spectral_cuntz_leq(c, b));

  CHECK_THROWS_AS(spectral(2, {Rat(1)}), CuError);
  CHECK_THROWS_AS(spectral(1, {-Rat(1)}), CuError);
}

TEST_CASE("spectral cut-downs") {
  auto a = spectral(3, {Rat(1), rq(1, 2), Rat(0)});
  auto cut = spectral_cutdown(a, rq(1, 2));
  CHECK(cut.eigenvalues == std::vector<Rat>{rq(1, 2), Rat(0), Rat(0)});
  CHECK(spectral_cuntz_leq(cut, a));

  // epsilon past the top eigenvalue kills the element
  CHECK(spectral_rank(spectral_cutdown(a, Rat(2))) == 0);

  // distance-style comparison: cutting a by just over ||a-b|| lands below b
  auto x = spectral(2, {Rat(1), rq(1, 2)});
  auto y = spectral(2, {rq(3, 4), rq(1, 4)});
  CHECK(spectral_cuntz_leq(spectral_cutdown(x, rq(1, 4) + rq(1, 100)), y));

  for (int e = 1; e <= 6; ++e)
    CHECK(spectral_cuntz_leq(spectral_cutdown(a, rq(1, e)), a));
}

TEST_CASE("spectral dimension function and layer cake") {
  auto a = spectral(3, {rq(1, 2), rq(1, 3), Rat(0)});
  CHECK(spectral_dtau(a) == rq(2, 3));
  CHECK(spectral_dtau(spectral(2, {Rat(0), Rat(0)})) == Rat(0));
  CHECK(spectral_dtau(spectral(4, {Rat(1), Rat(1), Rat(0), Rat(0)})) == rq(1, 2));

  auto N = make_nbar();
  Functional lam = Functional::scaling(N, ExtValue(rq(1, 3)));
  CHECK(layer_cake_trace(a, lam) == rq(5, 18));  // (1/3)(2/3) + (1/6)(1/3)

  // projections integrate to rank/dim
  auto p = spectral(4, {Rat(1), Rat(1), Rat(0), Rat(0)});
  CHECK(layer_cake_trace(p, Functional::scaling(N, ExtValue(rq(1, 4)))) == rq(1, 2));
  CHECK(layer_cake_trace(spectral(2, {Rat(0), Rat(0)}),
                         Functional::scaling(N, ExtValue(rq(1, 2)))) == Rat(0));

  // wrong normalization refused
  CHECK_THROWS_WITH_AS(layer_cake_trace(a, Functional::scaling(N, ExtValue(Rat(1)))),
                       doctest::Contains("1/dim"), CuError);

  // the layer cake is the normalized trace, randomly probed
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dim = 1 + rng() % 6;
    std::vector<Rat> eigs;
    Rat trace(0);
    for (std::size_t i = 0; i < dim; ++i) {
      std::int64_t den = 1 + rng() % 20;
      std::int64_t num = rng() % (4 * den);
      eigs.push_back(Rat(num, den));
      trace = trace + Rat(num, den);
    }
    auto r = spectral(dim, std::move(eigs));
    Functional norm =
        Functional::scaling(N, ExtValue(Rat(1, static_cast<std::int64_t>(dim))));
    CHECK(layer_cake_trace(r, norm) == trace / Rat(static_cast<std::int64_t>(dim)));
  }
}

TEST_CASE("orthogonal sums add spectra and ranks") {
  auto a = spectral(2, {Rat(1), Rat(0)});
  auto b = spectral(3, {rq(1, 2), rq(1, 3), Rat(0)});
  auto s = spectral_direct_sum(a, b);
  CHECK(s.dim == 5);
  CHECK(spectral_rank(s) == spectral_rank(a) + spectral_rank(b));
  CHECK(spectral_dtau(s) == rq(3, 5));

  auto N = make_nbar();
  CHECK(N->eq(to_cuntz_class(s, N),
              N->add(to_cuntz_class(a, N), to_cuntz_class(b, N))));
}

TEST_CASE("pl support comparison") {
  auto f = pl_tent(Rat(0), rq(1, 2));
  auto g = pl_tent(Rat(0), rq(3, 4));
  CHECK(pl_cuntz_leq(f, g));
  CHECK_FALSE(pl_way_below(f, g));  // closure of the support contains 0

  auto h = pl_tent(rq(1, 8), rq(1, 2));
  CHECK(pl_way_below(h, g));  // [1/8,1/2] inside (0,3/4)

  auto zero = pl({Rat(0), Rat(1)}, {Rat(0), Rat(0)});
  CHECK(pl_cuntz_leq(zero, f));
  CHECK(pl_way_below(zero, zero));
  CHECK_FALSE(pl_cuntz_leq(f, zero));

  // a single interior zero of g breaks containment
  auto pinched = pl({Rat(0), rq(1, 4), rq(1, 2), rq(3, 4), Rat(1)},
                    {Rat(0), Rat(1), Rat(0), Rat(1), Rat(0)});
  auto wide = pl_tent(Rat(0), Rat(1));
  CHECK(pl_cuntz_leq(pinched, wide));
  CHECK_FALSE(pl_cuntz_leq(wide, pinched));
}

TEST_CASE("pl dimension function and layer cake against a measure") {
  auto tent = pl_tent(rq(1, 4), rq(1, 2));
  CHECK(pl_dtau(tent, lebesgue()) == rq(1, 4));

  RationalMeasure atom{Rat(0), {{rq(1, 2), Rat(1)}}};
  auto covering = pl_tent(rq(1, 4), rq(3, 4));
  CHECK(pl_dtau(covering, atom) == Rat(1));
  CHECK(pl_dtau(tent, atom) == Rat(0));  // tent vanishes at 1/2

  auto zero = pl({Rat(0), Rat(1)}, {Rat(0), Rat(0)});
  CHECK(pl_dtau(zero, lebesgue()) == Rat(0));
  CHECK(pl_layer_cake(zero, lebesgue()) == Rat(0));

  // layer cake equals the direct integral, including mixed measures
  RationalMeasure mixed{rq(1, 2), {{rq(1, 3), rq(1, 4)}, {rq(1, 2), Rat(2)}}};
  CHECK(pl_layer_cake(tent, mixed) == pl_integral(tent, mixed));
  CHECK(pl_layer_cake(tent, lebesgue()) == rq(1, 8));  // tent area

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rat> bps{Rat(0)}, vals;
    std::int64_t grid = 4 + rng() % 5;
    for (std::int64_t i = 1; i < grid; ++i) bps.push_back(Rat(i, grid));
    bps.push_back(Rat(1));
    for (std::size_t i = 0; i < bps.size(); ++i) {
      std::int64_t den = 1 + rng() % 12;
      vals.push_back(Rat(rng() % (3 * den), den));
    }
    auto f = pl(bps, vals);
    RationalMeasure mu{Rat(rng() % 3, 1 + rng() % 4), {}};
    std::size_t n_atoms = rng() % 4;
    for (std::size_t k = 0; k < n_atoms; ++k) {
      std::int64_t den = 1 + rng() % 16;
      mu.atoms.push_back({Rat(rng() % (den + 1), den), Rat(rng() % 5, 1 + rng() % 3)});
    }
    CHECK(pl_layer_cake(f, mu) == pl_integral(f, mu));
  }
}

TEST_CASE("functional calculus stays below") {
  auto f = pl_tent(rq(1, 4), rq(3, 4));
  // h vanishing only at 0 preserves the class
  auto h = pl({Rat(0), rq(1, 2), Rat(1)}, {Rat(0), Rat(1), rq(1, 2)});
  auto hf = pl_compose(h, f);
  CHECK(pl_cuntz_leq(hf, f));
  CHECK(pl_cuntz_leq(f, hf));

  // h vanishing on [0,1/2] shrinks the support strictly
  auto cut = pl({Rat(0), rq(1, 2), Rat(1)}, {Rat(0), Rat(0), Rat(1)});
  auto cf = pl_compose(cut, f);
  CHECK(pl_cuntz_leq(cf, f));
  CHECK_FALSE(pl_cuntz_leq(f, cf));
}

TEST_CASE("rordam witness") {
  auto f = pl_tent(Rat(0), Rat(1));
  Rat delta = rordam_witness(f, f, rq(1, 2));
  CHECK(delta == rq(1, 4));  // min of f on {f >= 1/2} is 1/2; halved
  CHECK(pl_way_below(pl_cutdown(f, rq(1, 2)), pl_cutdown(f, delta)));

  CHECK(rordam_witness(f, f, Rat(2)) == Rat(1));  // vacuous epsilon

  auto small = pl_tent(rq(1, 4), rq(1, 2));
  CHECK_THROWS_WITH_AS(rordam_witness(f, small, rq(1, 8)),
                       doctest::Contains("not Cuntz below"), CuError);

  // clause replay on a non-symmetric pair
  auto g = pl_tent(Rat(0), rq(3, 4));
  auto h = pl_tent(rq(1, 8), rq(1, 2));
  Rat d2 = rordam_witness(h, g, rq(1, 3));
  CHECK_FALSE(d2.is_zero());
  CHECK_FALSE(d2.negative());
  CHECK(pl_way_below(pl_cutdown(h, rq(1, 3)), pl_cutdown(g, d2)));
}

TEST_CASE("way-below is an eventual cut-down comparison") {
  auto g = pl_tent(Rat(0), rq(3, 4));
  std::vector<std::pair<PLFunction, PLFunction>> pairs = {
      {pl_tent(rq(1, 8), rq(1, 2)), g},  // way below
      {pl_tent(Rat(0), rq(1, 2)), g},    // below but not way below
      {pl_tent(rq(1, 4), Rat(1)), g},    // incomparable
  };
  for (const auto& [f, gg] : pairs) {
    bool found = false;
    for (std::int64_t k = 1; k <= 64 && !found; k *= 2)
      found = pl_cuntz_leq(f, pl_cutdown(gg, Rat(1, k)));
    CHECK(found == pl_way_below(f, gg));
  }
}

TEST_CASE("classes embed into the catalog") {
  auto N = make_nbar();
  CHECK(N->eq(to_cuntz_class(spectral(3, {Rat(1), rq(1, 2), Rat(0)}), N), N->compact(Rat(2))));
  CHECK(N->eq(to_cuntz_class(spectral(1, {Rat(0)}), N), N->zero()));

  auto H = make_lsc_interval(make_softened(1));
  auto tent = pl_tent(rq(1, 4), rq(1, 2));
  CHECK(H->eq(to_cuntz_class(tent, H), H->indicator(rq(1, 4), rq(1, 2))));
  auto zero = pl({Rat(0), Rat(1)}, {Rat(0), Rat(0)});
  CHECK(H->eq(to_cuntz_class(zero, H), H->zero()));

  // order-embedding on random pairs, spectral then pl
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t da = 1 + rng() % 4, db = 1 + rng() % 4;
    std::vector<Rat> ea, eb;
    for (std::size_t i = 0; i < da; ++i) ea.push_back(Rat(rng() % 3, 1 + rng() % 3));
    for (std::size_t i = 0; i < db; ++i) eb.push_back(Rat(rng() % 3, 1 + rng() % 3));
    auto a = spectral(da, ea), b = spectral(db, eb);
    CHECK(spectral_cuntz_leq(a, b) == N->leq(to_cuntz_class(a, N), to_cuntz_class(b, N)));
  }
  for (int trial = 0; trial < 200; ++trial) {
    auto rnd_tent = [&]() {
      std::int64_t den = 2 + rng() % 10;
      std::int64_t lo = rng() % den;
      std::int64_t hi = lo + 1 + rng() % (den - lo);
      return pl_tent(Rat(lo, den), Rat(hi, den));
    };
    auto f = rnd_tent(), g = rnd_tent();
    if (rng() % 3 == 0) f = pl_add(f, rnd_tent());
    if (rng() % 3 == 0) g = pl_add(g, rnd_tent());
    CHECK(pl_cuntz_leq(f, g) == H->leq(to_cuntz_class(f, H), to_cuntz_class(g, H)));
    CHECK(pl_way_below(f, g) == H->way_below(to_cuntz_class(f, H), to_cuntz_class(g, H)));
  }
}
