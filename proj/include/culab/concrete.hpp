#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "culab/functionals.hpp"

namespace culab {

// --- positive matrix elements by their spectra -----------------------------
//
// A positive element of an n x n matrix algebra is identified with its
// eigenvalue multiset (a diagonal representative); everything used from the
// comparison theory depends only on spectrum and rank. General rational PSD
// matrices are excluded on purpose: their eigenvalues leave the rationals.
struct SpectralElement {
  std::size_t dim = 0;
  std::vector<Rat> eigenvalues;  // size dim, nonnegative, kept sorted descending
};

SpectralElement spectral(std::size_t dim, std::vector<Rat> eigenvalues);
std::size_t spectral_rank(const SpectralElement& a);
bool spectral_cuntz_leq(const SpectralElement& a, const SpectralElement& b);
SpectralElement spectral_cutdown(const SpectralElement& a, const Rat& eps);
SpectralElement spectral_direct_sum(const SpectralElement& a, const SpectralElement& b);
Rat spectral_dtau(const SpectralElement& a);  // rank/dim under the normalized trace

// Exact layer-cake integral of t |-> lambda(rank (a-t)_+); NotNormalized
// unless lambda is the scaling by 1/dim.
Rat layer_cake_trace(const SpectralElement& a, const Functional& lam);

// --- piecewise-linear functions on [0,1] -----------------------------------

struct PLFunction {
  std::vector<Rat> breakpoints;  // increasing, first 0, last 1
  std::vector<Rat> values;       // nonnegative, linear in between
};

// A subset of [0,1] as disjoint maximal intervals with endpoint membership.
struct RatInterval {
  Rat lo, hi;
  bool lo_in = false, hi_in = false;
};

PLFunction pl(std::vector<Rat> breakpoints, std::vector<Rat> values);
PLFunction pl_tent(const Rat& lo, const Rat& hi);  // height 1, peak at the midpoint
Rat pl_eval(const PLFunction& f, const Rat& x);
Rat pl_max(const PLFunction& f);
Rat pl_norm_dist(const PLFunction& f, const PLFunction& g);  // sup norm, exact
PLFunction pl_cutdown(const PLFunction& f, const Rat& eps);
PLFunction pl_compose(const PLFunction& h, const PLFunction& f);  // h o f, h(0) = 0
PLFunction pl_add(const PLFunction& f, const PLFunction& g);

std::vector<RatInterval> supp_o(const PLFunction& f);  // {f > 0}, relative topology

bool pl_cuntz_leq(const PLFunction& f, const PLFunction& g);   // supp containment
bool pl_way_below(const PLFunction& f, const PLFunction& g);   // closed-supp containment

// --- measures and the Riesz pairing ----------------------------------------

struct RationalMeasure {
  Rat lebesgue_weight;
  std::vector<std::pair<Rat, Rat>> atoms;  // (point, weight)
};

Rat measure_of(const RationalMeasure& mu, const std::vector<RatInterval>& set);
Rat pl_dtau(const PLFunction& f, const RationalMeasure& mu);        // mu(supp_o f)
Rat pl_layer_cake(const PLFunction& f, const RationalMeasure& mu);  // int mu{f>t} dt
Rat pl_integral(const PLFunction& f, const RationalMeasure& mu);    // direct int f dmu

// Rordam clause (iii): a delta with closure supp_o((f-eps)_+) inside
// supp_o((g-delta)_+); the canonical choice (min of g on {f >= eps})/2.
// NotSubequivalent when f is not Cuntz below g.
Rat rordam_witness(const PLFunction& f, const PLFunction& g, const Rat& eps);

// --- classes in the abstract catalog ---------------------------------------

Element to_cuntz_class(const SpectralElement& a, const std::shared_ptr<const ValueSemigroup>& N);
Element to_cuntz_class(const PLFunction& f, const std::shared_ptr<const IntervalLscSg>& H);

}  // namespace culab
