#include "culab/concrete.hpp"

#include <algorithm>
#include <set>

namespace culab {

namespace {

bool pos(const Rat& r) { return !r.is_zero() && !r.negative(); }

std::vector<Rat> sorted_desc(std::vector<Rat> v) {
  std::sort(v.begin(), v.end(), [](const Rat& a, const Rat& b) { return b < a; });
  return v;
}

}  // namespace

// --- spectral elements -----------------------------------------------------

SpectralElement spectral(std::size_t dim, std::vector<Rat> eigenvalues) {
  if (dim == 0 || eigenvalues.size() != dim)
    fail(ErrCode::BadParam, "eigenvalue count must match the dimension");
  for (const auto& v : eigenvalues)
    if (v.negative()) fail(ErrCode::BadParam, "negative eigenvalue");
  return SpectralElement{dim, sorted_desc(std::move(eigenvalues))};
}

std::size_t spectral_rank(const SpectralElement& a) {
  std::size_t r = 0;
  for (const auto& v : a.eigenvalues)
    if (pos(v)) ++r;
  return r;
}

bool spectral_cuntz_leq(const SpectralElement& a, const SpectralElement& b) {
  return spectral_rank(a) <= spectral_rank(b);
}

SpectralElement spectral_cutdown(const SpectralElement& a, const Rat& eps) {
  if (!pos(eps)) fail(ErrCode::BadParam, "cut-down needs a positive epsilon");
  std::vector<Rat> out;
  for (const auto& v : a.eigenvalues) out.push_back(eps < v ? v - eps : Rat(0));
  return spectral(a.dim, std::move(out));
}

SpectralElement spectral_direct_sum(const SpectralElement& a, const SpectralElement& b) {
  std::vector<Rat> all = a.eigenvalues;
  all.insert(all.end(), b.eigenvalues.begin(), b.eigenvalues.end());
  return spectral(a.dim + b.dim, std::move(all));
}

Rat spectral_dtau(const SpectralElement& a) {
  return Rat(static_cast<std::int64_t>(spectral_rank(a)), static_cast<std::int64_t>(a.dim));
}

Rat layer_cake_trace(const SpectralElement& a, const Functional& lam) {
  auto* V = dynamic_cast<const ValueSemigroup*>(lam.sg.get());
  if (lam.form != Functional::Form::Scaling || !V ||
      !(lam.t == ExtValue(Rat(1, static_cast<std::int64_t>(a.dim)))))
    fail(ErrCode::NotNormalized, "layer cake needs the scaling by 1/dim");
  // rank (a-t)_+ is constant between consecutive spectral values
  std::set<Rat> crit{Rat(0)};
  for (const auto& v : a.eigenvalues) crit.insert(v);
  std::vector<Rat> cv(crit.begin(), crit.end());
  Rat total(0);
  for (std::size_t j = 0; j + 1 < cv.size(); ++j) {
    std::int64_t count = 0;
    for (const auto& v : a.eigenvalues)
      if (cv[j] < v) ++count;
    ExtValue band = evaluate(lam, V->compact(Rat(count)));
    total = total + (cv[j + 1] - cv[j]) * band.finite();
  }
  return total;
}

// --- piecewise-linear functions --------------------------------------------

PLFunction pl(std::vector<Rat> breakpoints, std::vector<Rat> values) {
  if (breakpoints.size() < 2 || breakpoints.size() != values.size())
    fail(ErrCode::BadParam, "breakpoint/value lists must align (and cover [0,1])");
  if (!breakpoints.front().is_zero() || !(breakpoints.back() == Rat(1)))
    fail(ErrCode::BadParam, "breakpoints must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      fail(ErrCode::BadParam, "breakpoints must increase");
  for (const auto& v : values)
    if (v.negative()) fail(ErrCode::BadParam, "negative value");
  return PLFunction{std::move(breakpoints), std::move(values)};
}

PLFunction pl_tent(const Rat& lo, const Rat& hi) {
  if (!(Rat(0) <= lo && lo < hi && hi <= Rat(1))) fail(ErrCode::BadParam, "bad tent interval");
  Rat mid = (lo + hi) / Rat(2);
  std::vector<Rat> bps{Rat(0)}, vals{Rat(0)};
  if (pos(lo)) bps.push_back(lo), vals.push_back(Rat(0));
  bps.push_back(mid), vals.push_back(Rat(1));
  if (hi < Rat(1)) bps.push_back(hi), vals.push_back(Rat(0));
  bps.push_back(Rat(1)), vals.push_back(Rat(0));
  return pl(std::move(bps), std::move(vals));
}

Rat pl_eval(const PLFunction& f, const Rat& x) {
  if (x.negative() || Rat(1) < x) fail(ErrCode::BadParam, "point outside [0,1]");
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    const Rat &x0 = f.breakpoints[i], &x1 = f.breakpoints[i + 1];
    if (x1 < x) continue;
    return f.values[i] + (f.values[i + 1] - f.values[i]) * (x - x0) / (x1 - x0);
  }
  return f.values.back();
}

Rat pl_max(const PLFunction& f) {
  Rat m = f.values.front();
  for (const auto& v : f.values) m = m < v ? v : m;
  return m;
}

namespace {

// breakpoints of f refined with those of g and, optionally, with the points
// where a piece of f crosses each level in `levels`
std::vector<Rat> refined_points(const PLFunction& f, const std::vector<Rat>& extra,
                                const std::vector<Rat>& levels) {
  std::set<Rat> pts(f.breakpoints.begin(), f.breakpoints.end());
  for (const auto& x : extra) pts.insert(x);
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    const Rat &x0 = f.breakpoints[i], &x1 = f.breakpoints[i + 1];
    const Rat &v0 = f.values[i], &v1 = f.values[i + 1];
    if (v0 == v1) continue;
    for (const auto& lev : levels) {
      Rat t = (lev - v0) / (v1 - v0);  // f hits lev at x0 + t*(x1-x0)
      if (pos(t) && t < Rat(1)) pts.insert(x0 + t * (x1 - x0));
    }
  }
  return {pts.begin(), pts.end()};
}

}  // namespace

Rat pl_norm_dist(const PLFunction& f, const PLFunction& g) {
  auto pts = refined_points(f, g.breakpoints, {});
  Rat m(0);
  for (const auto& x : pts) {
    Rat d = pl_eval(f, x) - pl_eval(g, x);
    if (d.negative()) d = -d;
    if (m < d) m = d;
  }
  return m;
}

PLFunction pl_cutdown(const PLFunction& f, const Rat& eps) {
  if (!pos(eps)) fail(ErrCode::BadParam, "cut-down needs a positive epsilon");
  auto pts = refined_points(f, {}, {eps});
  std::vector<Rat> vals;
  for (const auto& x : pts) {
    Rat v = pl_eval(f, x);
    vals.push_back(eps < v ? v - eps : Rat(0));
  }
  return pl(pts, std::move(vals));
}

PLFunction pl_compose(const PLFunction& h, const PLFunction& f) {
  if (Rat(1) < pl_max(f)) fail(ErrCode::BadParam, "composition needs f valued in [0,1]");
  // refine so each piece of f maps into a single piece of h
  auto pts = refined_points(f, {}, h.breakpoints);
  std::vector<Rat> vals;
  for (const auto& x : pts) vals.push_back(pl_eval(h, pl_eval(f, x)));
  return pl(pts, std::move(vals));
}

PLFunction pl_add(const PLFunction& f, const PLFunction& g) {
  auto pts = refined_points(f, g.breakpoints, {});
  std::vector<Rat> vals;
  for (const auto& x : pts) vals.push_back(pl_eval(f, x) + pl_eval(g, x));
  return pl(pts, std::move(vals));
}

// --- open supports ---------------------------------------------------------

std::vector<RatInterval> supp_o(const PLFunction& f) {
  std::vector<RatInterval> out;
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    bool l = pos(f.values[i]), r = pos(f.values[i + 1]);
    if (!l && !r) continue;
    RatInterval piece{f.breakpoints[i], f.breakpoints[i + 1], l, r};
    // merge with the previous interval when the shared endpoint is positive
    if (!out.empty() && out.back().hi == piece.lo && (out.back().hi_in || piece.lo_in)) {
      out.back().hi = piece.hi;
      out.back().hi_in = piece.hi_in;
    } else {
      out.push_back(piece);
    }
  }
  return out;
}

namespace {

bool covers(const RatInterval& G, const RatInterval& I) {
  bool lo_ok = G.lo < I.lo || (G.lo == I.lo && (G.lo_in || !I.lo_in));
  bool hi_ok = I.hi < G.hi || (I.hi == G.hi && (G.hi_in || !I.hi_in));
  return lo_ok && hi_ok;
}

bool contained(const std::vector<RatInterval>& small, const std::vector<RatInterval>& big) {
  // maximal intervals are separated by points outside the set, so each small
  // interval must fit in one big interval
  for (const auto& I : small) {
    bool found = false;
    for (const auto& G : big)
      if (covers(G, I)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool member(const std::vector<RatInterval>& set, const Rat& p) {
  for (const auto& I : set) {
    if (I.lo < p && p < I.hi) return true;
    if (p == I.lo && I.lo_in) return true;
    if (p == I.hi && I.hi_in) return true;
  }
  return false;
}

}  // namespace

bool pl_cuntz_leq(const PLFunction& f, const PLFunction& g) {
  return contained(supp_o(f), supp_o(g));
}

bool pl_way_below(const PLFunction& f, const PLFunction& g) {
  std::vector<RatInterval> cl;
  for (const auto& I : supp_o(f)) cl.push_back({I.lo, I.hi, true, true});
  return contained(cl, supp_o(g));
}

// --- measures --------------------------------------------------------------

Rat measure_of(const RationalMeasure& mu, const std::vector<RatInterval>& set) {
  Rat total(0);
  for (const auto& I : set) total = total + mu.lebesgue_weight * (I.hi - I.lo);
  for (const auto& [p, w] : mu.atoms)
    if (member(set, p)) total = total + w;
  return total;
}

Rat pl_dtau(const PLFunction& f, const RationalMeasure& mu) { return measure_of(mu, supp_o(f)); }

namespace {

// lebesgue length of {x in [0,1] : f(x) > t}
Rat level_length(const PLFunction& f, const Rat& t) {
  Rat len(0);
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    Rat w = f.breakpoints[i + 1] - f.breakpoints[i];
    Rat v0 = f.values[i], v1 = f.values[i + 1];
    Rat hi = v0 < v1 ? v1 : v0, lo = v0 < v1 ? v0 : v1;
    if (!(t < hi)) continue;
    if (!(lo < t)) {
      len = len + w;  // whole piece above (lo >= t can only graze at endpoints)
      continue;
    }
    len = len + w * (hi - t) / (hi - lo);
  }
  return len;
}

}  // namespace

Rat pl_layer_cake(const PLFunction& f, const RationalMeasure& mu) {
  // atoms: the indicator of {f(p) > t} integrates to f(p) in t
  Rat total(0);
  for (const auto& [p, w] : mu.atoms) total = total + w * pl_eval(f, p);
  // lebesgue part: the level length is linear in t between critical values,
  // so each band integrates as width times the midpoint length
  std::set<Rat> crit{Rat(0)};
  for (const auto& v : f.values) crit.insert(v);
  std::vector<Rat> cv(crit.begin(), crit.end());
  for (std::size_t j = 0; j + 1 < cv.size(); ++j) {
    Rat mid = (cv[j] + cv[j + 1]) / Rat(2);
    total = total + mu.lebesgue_weight * (cv[j + 1] - cv[j]) * level_length(f, mid);
  }
  return total;
}

Rat pl_integral(const PLFunction& f, const RationalMeasure& mu) {
  Rat total(0);
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    Rat w = f.breakpoints[i + 1] - f.breakpoints[i];
    total = total + mu.lebesgue_weight * w * (f.values[i] + f.values[i + 1]) / Rat(2);
  }
  for (const auto& [p, wt] : mu.atoms) total = total + wt * pl_eval(f, p);
  return total;
}

// --- Rordam witness --------------------------------------------------------

Rat rordam_witness(const PLFunction& f, const PLFunction& g, const Rat& eps) {
  if (!pos(eps)) fail(ErrCode::BadParam, "epsilon must be positive");
  if (!pl_cuntz_leq(f, g)) fail(ErrCode::NotSubequivalent, "f is not Cuntz below g");
  if (!(eps < pl_max(f))) return Rat(1);  // the cut-down vanishes; any delta works
  // K = {f >= eps} is compact inside supp_o(g), so g has a positive minimum
  // on it; halve that minimum
  auto pts = refined_points(f, g.breakpoints, {eps});
  Rat best(0);
  bool first = true;
  for (const auto& x : pts) {
    if (pl_eval(f, x) < eps) continue;
    Rat gx = pl_eval(g, x);
    if (first || gx < best) best = gx, first = false;
  }
  if (first || best.is_zero()) fail(ErrCode::Internal, "level set lost its witness");
  return best / Rat(2);
}

// --- classes ---------------------------------------------------------------

Element to_cuntz_class(const SpectralElement& a, const std::shared_ptr<const ValueSemigroup>& N) {
  return N->compact(Rat(static_cast<std::int64_t>(spectral_rank(a))));
}

Element to_cuntz_class(const PLFunction& f, const std::shared_ptr<const IntervalLscSg>& H) {
  auto supp = supp_o(f);
  std::set<Rat> cutset{Rat(0), Rat(1)};
  for (const auto& I : supp) cutset.insert(I.lo), cutset.insert(I.hi);
  std::vector<Rat> cuts(cutset.begin(), cutset.end());
  Element one = H->target().compact(Rat(1)), z = H->target().zero();
  std::vector<Element> pieces, at;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    pieces.push_back(member(supp, (cuts[i] + cuts[i + 1]) / Rat(2)) ? one : z);
  for (const auto& c : cuts) at.push_back(member(supp, c) ? one : z);
  return H->step(std::move(cuts), std::move(pieces), std::move(at));
}

}  // namespace culab
