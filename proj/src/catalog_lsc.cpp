#include <algorithm>
#include <numeric>
#include <set>

#include "culab/catalog.hpp"

namespace culab {

// --- FiniteLscSg -----------------------------------------------------------

FiniteLscSg::FiniteLscSg(FiniteSpace X, SgPtr target, std::optional<ExtValue> cap)
    : X_(std::move(X)), target_(std::move(target)), cap_(cap) {
  X_.validate();
  if (!dynamic_cast<const ValueSemigroup*>(target_.get()))
    fail(ErrCode::BadParam, "lsc_finite targets must be value semigroups");
}

std::string FiniteLscSg::describe() const {
  return "Lsc(" + std::to_string(X_.size()) + "-point space, " + target_->describe() + ")";
}

bool FiniteLscSg::upper_sets_open(const std::vector<Element>& v) const {
  for (const auto& t : v) {
    if (ValueSemigroup::value_of(t).is_zero()) continue;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (target_->leq(t, v[i])) mask |= (1u << i);
    if (!X_.is_open(mask)) return false;
  }
  return true;
}

Element FiniteLscSg::fn(std::vector<Element> values) const {
  Element e = tag(FnTable{std::move(values)});
  validate(e);
  return e;
}

Element FiniteLscSg::indicator(std::uint32_t open_mask) const {
  if (!X_.is_open(open_mask)) fail(ErrCode::BadParam, "indicator of a non-open set is not lsc");
  auto* vt = static_cast<const ValueSemigroup*>(target_.get());
  std::vector<Element> v;
  for (std::size_t i = 0; i < X_.size(); ++i)
    v.push_back((open_mask >> i) & 1 ? vt->compact(Rat(1)) : vt->zero());
  return fn(std::move(v));
}

void FiniteLscSg::validate(const Element& a) const {
  check_mine(a);
  auto* f = std::get_if<FnTable>(&a.p);
  if (!f) fail(ErrCode::ValidationError, "lsc_finite elements are point tables");
  if (f->at.size() != X_.size()) fail(ErrCode::ValidationError, "table size mismatch");
  for (const auto& v : f->at) {
    target_->validate(v);
    if (cap_ && !(ValueSemigroup::value_of(v) <= *cap_))
      fail(ErrCode::ValidationError, "value exceeds the cap");
  }
  if (!upper_sets_open(f->at))
    fail(ErrCode::ValidationError, "upper level set is not open (not lsc)");
}

Element FiniteLscSg::zero_impl() const {
  std::vector<Element> v(X_.size(), target_->zero());
  return tag(FnTable{std::move(v)});
}

bool FiniteLscSg::leq_impl(const Element& a, const Element& b) const {
  const auto& fa = std::get<FnTable>(a.p).at;
  const auto& fb = std::get<FnTable>(b.p).at;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!target_->leq(fa[i], fb[i])) return false;
  return true;
}

Element FiniteLscSg::add_impl(const Element& a, const Element& b) const {
  const auto& fa = std::get<FnTable>(a.p).at;
  const auto& fb = std::get<FnTable>(b.p).at;
  auto* vt = static_cast<const ValueSemigroup*>(target_.get());
  std::vector<Element> v;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    Element s = target_->add(fa[i], fb[i]);
    // capped targets saturate instead of overflowing
    if (cap_ && !cap_->is_inf() && !(ValueSemigroup::value_of(s) <= *cap_))
      s = vt->compact(cap_->finite());
    v.push_back(s);
  }
  return tag(FnTable{std::move(v)});
}

bool FiniteLscSg::way_below_impl(const Element& a, const Element& b) const {
  // Finite carrier: increasing sequences stabilize per point, so compact
  // containment is pointwise.
  const auto& fa = std::get<FnTable>(a.p).at;
  const auto& fb = std::get<FnTable>(b.p).at;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!target_->way_below(fa[i], fb[i])) return false;
  return true;
}

std::optional<Element> FiniteLscSg::wedge_impl(const Element& a, const Element& b) const {
  const auto& fa = std::get<FnTable>(a.p).at;
  const auto& fb = std::get<FnTable>(b.p).at;
  std::vector<Element> v;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    auto w = target_->wedge(fa[i], fb[i]);
    if (!w) return std::nullopt;
    v.push_back(*w);
  }
  return tag(FnTable{std::move(v)});  // pointwise min of lsc stays lsc
}

SequenceDescriptor FiniteLscSg::approximants_impl(const Element& a) const {
  SequenceDescriptor d;
  if (is_compact(a)) {
    d.prefix = {a};
    d.tail = SequenceDescriptor::Tail::Constant;
    return d;
  }
  d.tail = SequenceDescriptor::Tail::Ascent;
  d.limit = a;
  return d;
}

Element FiniteLscSg::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  const auto& fv = std::get<FnTable>(limit.p).at;
  std::vector<Element> v;
  for (const auto& val : fv)
    v.push_back(target_->is_compact(val) ? val : target_->nth_approximant(val, j));
  return tag(FnTable{std::move(v)});
}

Element FiniteLscSg::infinity_impl(const Element& a) const {
  auto* vt = static_cast<const ValueSemigroup*>(target_.get());
  const auto& fv = std::get<FnTable>(a.p).at;
  // With a finite cap, multiples stabilize at the cap instead of at the top.
  Element up = (cap_ && !cap_->is_inf()) ? vt->compact(cap_->finite()) : vt->top();
  std::vector<Element> v;
  for (const auto& val : fv)
    v.push_back(ValueSemigroup::value_of(val).is_zero() ? target_->zero() : up);
  return tag(FnTable{std::move(v)});
}

std::vector<Element> FiniteLscSg::enumerate(const FragParams& p) const {
  FragParams tp = p;
  tp.value_bound = std::min<std::int64_t>(p.value_bound, 2);
  tp.denom_bound = std::min<std::int64_t>(p.denom_bound, 2);
  auto vals = target_->enumerate(tp);
  if (cap_) {
    std::vector<Element> kept;
    for (auto& v : vals)
      if (ValueSemigroup::value_of(v) <= *cap_) kept.push_back(v);
    vals = kept;
  }
  std::vector<Element> out;
  std::vector<std::size_t> idx(X_.size(), 0);
  while (true) {
    std::vector<Element> v;
    for (auto i : idx) v.push_back(vals[i]);
    if (upper_sets_open(v)) out.push_back(tag(FnTable{std::move(v)}));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == vals.size()) idx[k++] = 0;
    if (k == idx.size()) break;
    if (out.size() > 4000) break;
  }
  return out;
}

std::shared_ptr<const FiniteLscSg> make_lsc_finite(FiniteSpace X, SgPtr target,
                                                   std::optional<ExtValue> cap) {
  return std::make_shared<FiniteLscSg>(std::move(X), std::move(target), cap);
}

// --- IntervalLscSg ---------------------------------------------------------

namespace {

struct Flat {
  std::vector<Rat> cuts;
  std::vector<Element> pieces;
  std::vector<Element> at;
};

Flat refine(const StepFn& f, const std::vector<Rat>& cuts) {
  Flat out;
  out.cuts = cuts;
  std::size_t oi = 0;  // index into f.cuts
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    while (oi + 1 < f.cuts.size() && f.cuts[oi + 1] <= cuts[i]) ++oi;
    if (f.cuts[oi] == cuts[i])
      out.at.push_back(f.at[oi]);
    else
      out.at.push_back(f.pieces[oi]);  // interior of an old piece
    if (i + 1 < cuts.size()) {
      std::size_t pi = oi;
      // the new piece (cuts[i], cuts[i+1]) sits inside the old piece whose
      // left cut is the last old cut <= cuts[i]
      out.pieces.push_back(f.pieces[pi]);
    }
  }
  return out;
}

std::vector<Rat> merged_cuts(const StepFn& a, const StepFn& b) {
  std::vector<Rat> cuts = a.cuts;
  cuts.insert(cuts.end(), b.cuts.begin(), b.cuts.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

bool den_compatible(std::int64_t den, std::int64_t base) {
  if (base == 0) return true;  // unconstrained
  if (base == 1) return den == 1;
  while (den > 1) {
    std::int64_t g = std::gcd(den, base);
    if (g == 1) return false;
    while (den % g == 0) den /= g;
  }
  return true;
}

}  // namespace

IntervalLscSg::IntervalLscSg(std::shared_ptr<const ValueSemigroup> target, std::int64_t base0,
                             std::int64_t base1)
    : target_(std::move(target)), base0_(base0), base1_(base1) {}

std::string IntervalLscSg::describe() const {
  std::string s = "Lsc([0,1], " + target_->describe() + ")";
  if (base0_ || base1_)
    s += " with endpoint pincer (" + std::to_string(base0_) + ", " + std::to_string(base1_) + ")";
  return s;
}

Element IntervalLscSg::canon(StepFn f) const {
  // merge adjacent pieces that agree across a cut with matching cut value
  for (std::size_t i = 1; i + 1 < f.cuts.size();) {
    if (payload_eq(f.pieces[i - 1].p, f.pieces[i].p) && payload_eq(f.at[i].p, f.pieces[i].p)) {
      f.cuts.erase(f.cuts.begin() + i);
      f.pieces.erase(f.pieces.begin() + i);
      f.at.erase(f.at.begin() + i);
    } else {
      ++i;
    }
  }
  return tag(std::move(f));
}

void IntervalLscSg::validate(const Element& a) const {
  check_mine(a);
  auto* f = std::get_if<StepFn>(&a.p);
  if (!f) fail(ErrCode::ValidationError, "interval elements are step functions");
  if (f->cuts.size() < 2 || f->cuts.front() != Rat(0) || f->cuts.back() != Rat(1))
    fail(ErrCode::ValidationError, "cuts must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < f->cuts.size(); ++i)
    if (!(f->cuts[i] < f->cuts[i + 1])) fail(ErrCode::ValidationError, "cuts must increase");
  if (f->pieces.size() + 1 != f->cuts.size() || f->at.size() != f->cuts.size())
    fail(ErrCode::ValidationError, "piece/cut arity mismatch");
  for (const auto& v : f->pieces) target_->validate(v);
  for (const auto& v : f->at) target_->validate(v);
  for (std::size_t i = 0; i < f->at.size(); ++i) {
    bool ok = true;
    if (i > 0) ok = ok && target_->leq(f->at[i], f->pieces[i - 1]);
    if (i + 1 < f->cuts.size()) ok = ok && target_->leq(f->at[i], f->pieces[i]);
    if (!ok) fail(ErrCode::ValidationError, "cut value exceeds a neighbouring piece (not lsc)");
  }
  auto endpoint_ok = [&](const Element& v, std::int64_t base) {
    if (!ValueSemigroup::compact_tagged(v)) return true;  // soft endpoint values are free
    return den_compatible(ValueSemigroup::value_of(v).finite().den(), base);
  };
  if (!endpoint_ok(f->at.front(), base0_))
    fail(ErrCode::BadConstraint, "f(0) violates the endpoint constraint");
  if (!endpoint_ok(f->at.back(), base1_))
    fail(ErrCode::BadConstraint, "f(1) violates the endpoint constraint");
}

Element IntervalLscSg::step(std::vector<Rat> cuts, std::vector<Element> pieces,
                            std::vector<Element> at) const {
  Element e = canon(StepFn{std::move(cuts), std::move(pieces), std::move(at)});
  validate(e);
  return e;
}

Element IntervalLscSg::indicator(const Rat& lo, const Rat& hi) const {
  if (!(Rat(0) <= lo && lo < hi && hi <= Rat(1))) fail(ErrCode::BadParam, "bad indicator interval");
  Element one = target_->compact(Rat(1));
  Element z = target_->zero();
  std::vector<Rat> cuts{Rat(0)};
  if (lo != Rat(0)) cuts.push_back(lo);
  if (hi != Rat(1)) cuts.push_back(hi);
  cuts.push_back(Rat(1));
  std::vector<Element> pieces, at(cuts.size(), z);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / Rat(2);
    pieces.push_back(lo < mid && mid < hi ? one : z);
  }
  return step(std::move(cuts), std::move(pieces), std::move(at));
}

Element IntervalLscSg::constant(const Element& value) const {
  target_->validate(value);
  return step({Rat(0), Rat(1)}, {value}, {value, value});
}

bool IntervalLscSg::is_constant(const Element& f) const {
  const auto& s = std::get<StepFn>(f.p);
  for (const auto& pc : s.pieces)
    if (!payload_eq(pc.p, s.pieces[0].p)) return false;
  for (const auto& av : s.at)
    if (!payload_eq(av.p, s.pieces[0].p)) return false;
  return true;
}

ExtValue IntervalLscSg::integral(const Element& f) const {
  const auto& s = std::get<StepFn>(f.p);
  ExtValue total{Rat(0)};
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    ExtValue v = ValueSemigroup::value_of(s.pieces[i]);
    total = total + v.scaled(s.cuts[i + 1] - s.cuts[i]);
  }
  return total;
}

Element IntervalLscSg::zero_impl() const {
  Element z = target_->zero();
  return tag(StepFn{{Rat(0), Rat(1)}, {z}, {z, z}});
}

bool IntervalLscSg::leq_impl(const Element& a, const Element& b) const {
  const auto& fa = std::get<StepFn>(a.p);
  const auto& fb = std::get<StepFn>(b.p);
  auto cuts = merged_cuts(fa, fb);
  Flat ra = refine(fa, cuts), rb = refine(fb, cuts);
  for (std::size_t i = 0; i < cuts.size(); ++i)
    if (!target_->leq(ra.at[i], rb.at[i])) return false;
  for (std::size_t i = 0; i < ra.pieces.size(); ++i)
    if (!target_->leq(ra.pieces[i], rb.pieces[i])) return false;
  return true;
}

Element IntervalLscSg::add_impl(const Element& a, const Element& b) const {
  const auto& fa = std::get<StepFn>(a.p);
  const auto& fb = std::get<StepFn>(b.p);
  auto cuts = merged_cuts(fa, fb);
  Flat ra = refine(fa, cuts), rb = refine(fb, cuts);
  StepFn out;
  out.cuts = cuts;
  for (std::size_t i = 0; i < ra.pieces.size(); ++i)
    out.pieces.push_back(target_->add(ra.pieces[i], rb.pieces[i]));
  for (std::size_t i = 0; i < cuts.size(); ++i)
    out.at.push_back(target_->add(ra.at[i], rb.at[i]));
  return canon(std::move(out));
}

bool IntervalLscSg::way_below_impl(const Element& a, const Element& b) const {
  // Level-set rule: closure{a >= t} inside {b >= t} for every threshold t.
  const auto& fa = std::get<StepFn>(a.p);
  const auto& fb = std::get<StepFn>(b.p);
  auto cuts = merged_cuts(fa, fb);
  Flat ra = refine(fa, cuts), rb = refine(fb, cuts);
  std::set<Element, ElementLess> thresholds;
  for (auto& v : ra.pieces) thresholds.insert(v);
  for (auto& v : ra.at) thresholds.insert(v);
  for (auto& v : rb.pieces) thresholds.insert(v);
  for (auto& v : rb.at) thresholds.insert(v);
  for (const auto& t : thresholds) {
    if (ValueSemigroup::value_of(t).is_zero()) continue;
    // pieces in the level set force their closed endpoints into {b >= t};
    // containment uses << so soft thresholds demand strict domination (the
    // approximants of b erode soft values, so equality is not enough)
    for (std::size_t i = 0; i < ra.pieces.size(); ++i) {
      if (!target_->leq(t, ra.pieces[i])) continue;
      if (!target_->way_below(t, rb.pieces[i])) return false;
      if (!target_->way_below(t, rb.at[i])) return false;
      if (!target_->way_below(t, rb.at[i + 1])) return false;
    }
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (!target_->leq(t, ra.at[i])) continue;
      if (!target_->way_below(t, rb.at[i])) return false;
    }
  }
  return true;
}

std::vector<Element> IntervalLscSg::complement_guesses(const Element& hi, const Element& lo) const {
  const auto& fh = std::get<StepFn>(hi.p);
  const auto& fl = std::get<StepFn>(lo.p);
  auto cuts = merged_cuts(fh, fl);
  Flat rh = refine(fh, cuts), rl = refine(fl, cuts);
  std::vector<Element> out;
  for (bool prefer_soft : {false, true}) {
    auto diff = [&](const Element& h, const Element& l) -> Element {
      ExtValue hv = ValueSemigroup::value_of(h), lv = ValueSemigroup::value_of(l);
      if (hv.is_inf()) return lv.is_inf() ? target_->zero() : target_->top();
      if (lv.is_inf()) return target_->zero();
      Rat d = hv.finite() - lv.finite();
      if (!(Rat(0) < d)) return target_->zero();
      if (!prefer_soft && target_->in_compact_part(d)) return target_->compact(d);
      if (target_->has_dense_soft()) return target_->soft(ExtValue(d));
      return target_->in_compact_part(d) ? target_->compact(d) : target_->top();
    };
    StepFn w;
    w.cuts = cuts;
    for (std::size_t i = 0; i < rh.pieces.size(); ++i)
      w.pieces.push_back(diff(rh.pieces[i], rl.pieces[i]));
    for (std::size_t i = 0; i < cuts.size(); ++i) w.at.push_back(diff(rh.at[i], rl.at[i]));
    // lsc envelope: a raw pointwise difference may spike at a cut
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      Element v = w.at[i];
      if (i > 0) v = *target_->wedge(v, w.pieces[i - 1]);
      if (i + 1 < cuts.size()) v = *target_->wedge(v, w.pieces[i]);
      w.at[i] = v;
    }
    try {
      out.push_back(step(w.cuts, w.pieces, w.at));
    } catch (const CuError&) {
      // endpoint pincer rejected the guess
    }
  }
  return out;
}

std::optional<Element> IntervalLscSg::wedge_impl(const Element& a, const Element& b) const {
  // pointwise min; the target is totally ordered, and min of lsc is lsc
  const auto& fa = std::get<StepFn>(a.p);
  const auto& fb = std::get<StepFn>(b.p);
  auto cuts = merged_cuts(fa, fb);
  Flat ra = refine(fa, cuts), rb = refine(fb, cuts);
  StepFn out;
  out.cuts = cuts;
  for (std::size_t i = 0; i < ra.pieces.size(); ++i) {
    auto w = target_->wedge(ra.pieces[i], rb.pieces[i]);
    if (!w) return std::nullopt;
    out.pieces.push_back(*w);
  }
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    auto w = target_->wedge(ra.at[i], rb.at[i]);
    if (!w) return std::nullopt;
    out.at.push_back(*w);
  }
  return canon(std::move(out));
}

SequenceDescriptor IntervalLscSg::approximants_impl(const Element& a) const {
  SequenceDescriptor d;
  if (is_compact(a)) {
    d.prefix = {a};
    d.tail = SequenceDescriptor::Tail::Constant;
    return d;
  }
  d.tail = SequenceDescriptor::Tail::Ascent;
  d.limit = a;
  return d;
}

Element IntervalLscSg::nth_approximant(const Element& limit, int j) const {
  // Erosion by a shrinking margin, with soft values approximated from below.
  check_mine(limit);
  const auto& f = std::get<StepFn>(limit.p);
  Rat gap = Rat(1);
  for (std::size_t i = 0; i + 1 < f.cuts.size(); ++i)
    gap = std::min(gap, f.cuts[i + 1] - f.cuts[i], [](const Rat& x, const Rat& y) { return x < y; });
  Rat delta = gap / Rat(j + 3);
  auto approx_val = [&](const Element& v) {
    return target_->is_compact(v) ? v : target_->nth_approximant(v, j);
  };
  // evaluate min of the approximated function over [x-delta, x+delta]
  auto eroded_at = [&](const Rat& x) {
    Rat lo = std::max(Rat(0), x - delta, [](const Rat& p, const Rat& q) { return p < q; });
    Rat hi = std::min(Rat(1), x + delta, [](const Rat& p, const Rat& q) { return p < q; });
    std::optional<Element> m;
    auto fold = [&](const Element& v) {
      Element w = approx_val(v);
      if (!m || target_->leq(w, *m)) m = w;
    };
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
      if (f.cuts[i + 1] <= lo || hi <= f.cuts[i]) continue;  // no overlap with open piece
      if (f.cuts[i] < hi && lo < f.cuts[i + 1]) fold(f.pieces[i]);
    }
    for (std::size_t i = 0; i < f.cuts.size(); ++i)
      if (lo <= f.cuts[i] && f.cuts[i] <= hi) fold(f.at[i]);
    return *m;
  };
  // refined grid: original cuts plus +-delta shifts
  std::vector<Rat> cuts{Rat(0), Rat(1)};
  for (const auto& c : f.cuts) {
    cuts.push_back(c);
    if (c - delta > Rat(0)) cuts.push_back(c - delta);
    if (c + delta < Rat(1)) cuts.push_back(c + delta);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  StepFn out;
  out.cuts = cuts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.pieces.push_back(eroded_at((cuts[i] + cuts[i + 1]) / Rat(2)));
  for (std::size_t i = 0; i < cuts.size(); ++i) out.at.push_back(eroded_at(cuts[i]));
  return canon(std::move(out));
}

Element IntervalLscSg::infinity_impl(const Element& a) const {
  const auto& f = std::get<StepFn>(a.p);
  StepFn out;
  out.cuts = f.cuts;
  auto blow = [&](const Element& v) {
    return ValueSemigroup::value_of(v).is_zero() ? target_->zero() : target_->top();
  };
  for (const auto& v : f.pieces) out.pieces.push_back(blow(v));
  for (const auto& v : f.at) out.at.push_back(blow(v));
  return canon(std::move(out));
}

std::vector<Element> IntervalLscSg::enumerate(const FragParams& p) const {
  std::vector<Element> out;
  out.push_back(zero_impl());
  // constants over a small slice of the target
  FragParams tp = p;
  tp.value_bound = std::min<std::int64_t>(p.value_bound, 2);
  tp.denom_bound = std::min<std::int64_t>(p.denom_bound, 3);
  for (const auto& v : target_->enumerate(tp)) {
    bool ok = true;
    try {
      out.push_back(constant(v));
    } catch (const CuError&) {
      ok = false;  // endpoint pincer rejects it
    }
    (void)ok;
  }
  // indicators on a quarter grid
  for (int lo = 0; lo < 4; ++lo)
    for (int hi = lo + 1; hi <= 4; ++hi) out.push_back(indicator(Rat(lo, 4), Rat(hi, 4)));
  return out;
}

std::shared_ptr<const IntervalLscSg> make_lsc_interval(std::shared_ptr<const ValueSemigroup> target) {
  return std::make_shared<IntervalLscSg>(std::move(target), 0, 0);
}

std::shared_ptr<const IntervalLscSg> make_dimension_drop() {
  return std::make_shared<IntervalLscSg>(make_softened(6), 2, 3);
}

}  // namespace culab
