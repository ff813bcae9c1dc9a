#include <algorithm>

#include "culab/catalog.hpp"

namespace culab {

// --- ProductSg -------------------------------------------------------------

ProductSg::ProductSg(std::vector<SgPtr> factors) : fs_(std::move(factors)) {
  for (const auto& f : fs_)
    if (!f) fail(ErrCode::BadParam, "null product factor");
}

std::string ProductSg::describe() const {
  std::string s = "product(";
  for (std::size_t i = 0; i < fs_.size(); ++i) s += (i ? ", " : "") + fs_[i]->describe();
  return s + ")";
}

Element ProductSg::tuple(std::vector<Element> parts) const {
  if (parts.size() != fs_.size()) fail(ErrCode::BadParam, "tuple arity mismatch");
  for (std::size_t i = 0; i < parts.size(); ++i) fs_[i]->validate(parts[i]);
  return tag(Tuple{std::move(parts)});
}

const std::vector<Element>& ProductSg::parts(const Element& a) {
  auto* t = std::get_if<Tuple>(&a.p);
  if (!t) fail(ErrCode::ValidationError, "product elements are tuples");
  return t->parts;
}

void ProductSg::validate(const Element& a) const {
  check_mine(a);
  const auto& ps = parts(a);
  if (ps.size() != fs_.size()) fail(ErrCode::ValidationError, "tuple arity mismatch");
  for (std::size_t i = 0; i < ps.size(); ++i) fs_[i]->validate(ps[i]);
}

Element ProductSg::zero_impl() const {
  std::vector<Element> ps;
  for (const auto& f : fs_) ps.push_back(f->zero());
  return tag(Tuple{std::move(ps)});
}

bool ProductSg::leq_impl(const Element& a, const Element& b) const {
  const auto& pa = parts(a);
  const auto& pb = parts(b);
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->leq(pa[i], pb[i])) return false;
  return true;
}

Element ProductSg::add_impl(const Element& a, const Element& b) const {
  const auto& pa = parts(a);
  const auto& pb = parts(b);
  std::vector<Element> ps;
  for (std::size_t i = 0; i < fs_.size(); ++i) ps.push_back(fs_[i]->add(pa[i], pb[i]));
  return tag(Tuple{std::move(ps)});
}

bool ProductSg::way_below_impl(const Element& a, const Element& b) const {
  const auto& pa = parts(a);
  const auto& pb = parts(b);
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->way_below(pa[i], pb[i])) return false;
  return true;
}

std::optional<Element> ProductSg::wedge_impl(const Element& a, const Element& b) const {
  const auto& pa = parts(a);
  const auto& pb = parts(b);
  std::vector<Element> ps;
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    auto w = fs_[i]->wedge(pa[i], pb[i]);
    if (!w) return std::nullopt;
    ps.push_back(*w);
  }
  return tag(Tuple{std::move(ps)});
}

SequenceDescriptor ProductSg::approximants_impl(const Element& a) const {
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

Element ProductSg::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  const auto& ps = parts(limit);
  std::vector<Element> out;
  for (std::size_t i = 0; i < fs_.size(); ++i)
    out.push_back(fs_[i]->is_compact(ps[i]) ? ps[i] : fs_[i]->nth_approximant(ps[i], j));
  return tag(Tuple{std::move(out)});
}

Element ProductSg::infinity_impl(const Element& a) const {
  const auto& ps = parts(a);
  std::vector<Element> out;
  for (std::size_t i = 0; i < fs_.size(); ++i) out.push_back(fs_[i]->infinity_of(ps[i]));
  return tag(Tuple{std::move(out)});
}

std::vector<Element> ProductSg::enumerate(const FragParams& p) const {
  std::vector<std::vector<Element>> per;
  FragParams q = p;
  q.value_bound = std::min<std::int64_t>(p.value_bound, 3);
  q.denom_bound = std::min<std::int64_t>(p.denom_bound, 4);
  for (const auto& f : fs_) per.push_back(f->enumerate(q));
  std::vector<Element> out;
  if (per.empty()) return {zero_impl()};
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    std::vector<Element> ps;
    for (std::size_t i = 0; i < per.size(); ++i) ps.push_back(per[i][idx[i]]);
    out.push_back(tag(Tuple{std::move(ps)}));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per[k].size()) idx[k++] = 0;
    if (k == idx.size() || out.size() > 4000) break;
  }
  return out;
}

std::shared_ptr<const ProductSg> make_product(std::vector<SgPtr> factors) {
  return std::make_shared<ProductSg>(std::move(factors));
}

// --- ZStableSg -------------------------------------------------------------

ZStableSg::ZStableSg(std::size_t d, std::size_t k, std::vector<std::vector<Rat>> pairing)
    : d_(d), k_(k), pairing_(std::move(pairing)) {
  if (d_ < 1 || k_ < 1) fail(ErrCode::BadParam, "zstable model needs d >= 1, k >= 1");
  if (pairing_.size() != d_) fail(ErrCode::BadPairing, "pairing has wrong row count");
  for (const auto& row : pairing_) {
    if (row.size() != k_) fail(ErrCode::BadPairing, "pairing has wrong column count");
    for (const auto& v : row)
      if (!(Rat(0) < v)) fail(ErrCode::BadPairing, "pairing values must be strictly positive");
  }
}

std::string ZStableSg::describe() const {
  return "zstable(N^" + std::to_string(d_) + ", " + std::to_string(k_) + " traces)";
}

Element ZStableSg::comp(std::vector<std::int64_t> x) const {
  Element e = tag(ZsC{std::move(x)});
  validate(e);
  return e;
}

Element ZStableSg::soft(std::vector<ExtValue> f) const {
  Element e = tag(ZsS{std::move(f)});
  validate(e);
  return e;
}

std::vector<ExtValue> ZStableSg::hat(const Element& a) const {
  if (auto* c = std::get_if<ZsC>(&a.p)) {
    std::vector<ExtValue> out(k_, ExtValue(Rat(0)));
    for (std::size_t v = 0; v < k_; ++v) {
      Rat s(0);
      for (std::size_t i = 0; i < d_; ++i) s = s + Rat(c->x[i]) * pairing_[i][v];
      out[v] = ExtValue(s);
    }
    return out;
  }
  return std::get<ZsS>(a.p).f;
}

void ZStableSg::validate(const Element& a) const {
  check_mine(a);
  if (auto* c = std::get_if<ZsC>(&a.p)) {
    if (c->x.size() != d_) fail(ErrCode::ValidationError, "compact tuple arity mismatch");
    for (auto v : c->x)
      if (v < 0) fail(ErrCode::ValidationError, "compact coordinates must be nonnegative");
    return;
  }
  if (auto* s = std::get_if<ZsS>(&a.p)) {
    if (s->f.size() != k_) fail(ErrCode::ValidationError, "vertex tuple arity mismatch");
    for (const auto& v : s->f)
      if (v.is_zero()) fail(ErrCode::ValidationError, "soft vertex values must be strictly positive");
    return;
  }
  fail(ErrCode::ValidationError, "zstable elements are compact tuples or vertex tuples");
}

Element ZStableSg::zero_impl() const { return tag(ZsC{std::vector<std::int64_t>(d_, 0)}); }

namespace {
bool zs_is_zero(const Element& a) {
  auto* c = std::get_if<ZsC>(&a.p);
  if (!c) return false;
  for (auto v : c->x)
    if (v != 0) return false;
  return true;
}
}  // namespace

bool ZStableSg::leq_impl(const Element& a, const Element& b) const {
  bool ca = std::holds_alternative<ZsC>(a.p);
  bool cb = std::holds_alternative<ZsC>(b.p);
  if (zs_is_zero(a)) return true;
  if (ca && cb) {
    const auto& x = std::get<ZsC>(a.p).x;
    const auto& y = std::get<ZsC>(b.p).x;
    for (std::size_t i = 0; i < d_; ++i)
      if (x[i] > y[i]) return false;
    return true;
  }
  auto ha = hat(a);
  auto hb = hat(b);
  if (ca && !cb) {
    // compact below soft needs strict rank inequality at every vertex
    for (std::size_t v = 0; v < k_; ++v)
      if (!(ha[v] < hb[v])) return false;
    return true;
  }
  for (std::size_t v = 0; v < k_; ++v)
    if (!(ha[v] <= hb[v])) return false;
  return true;
}

Element ZStableSg::add_impl(const Element& a, const Element& b) const {
  bool ca = std::holds_alternative<ZsC>(a.p);
  bool cb = std::holds_alternative<ZsC>(b.p);
  if (ca && cb) {
    const auto& x = std::get<ZsC>(a.p).x;
    const auto& y = std::get<ZsC>(b.p).x;
    std::vector<std::int64_t> s(d_);
    for (std::size_t i = 0; i < d_; ++i) s[i] = x[i] + y[i];
    return tag(ZsC{std::move(s)});
  }
  if (zs_is_zero(a)) return b;
  if (zs_is_zero(b)) return a;
  auto ha = hat(a);
  auto hb = hat(b);
  std::vector<ExtValue> s(k_);
  for (std::size_t v = 0; v < k_; ++v) s[v] = ha[v] + hb[v];
  return tag(ZsS{std::move(s)});
}

bool ZStableSg::way_below_impl(const Element& a, const Element& b) const {
  if (std::holds_alternative<ZsC>(a.p)) return leq_impl(a, b);  // compacts are compact
  if (std::holds_alternative<ZsC>(b.p)) return leq_impl(a, b);
  const auto& f = std::get<ZsS>(a.p).f;
  const auto& g = std::get<ZsS>(b.p).f;
  for (std::size_t v = 0; v < k_; ++v)
    if (!(f[v] < g[v])) return false;  // note inf < inf fails, as it must
  return true;
}

std::optional<Element> ZStableSg::wedge_impl(const Element& a, const Element& b) const {
  if (leq_impl(a, b)) return a;
  if (leq_impl(b, a)) return b;
  auto ha = hat(a);
  auto hb = hat(b);
  std::vector<ExtValue> m(k_);
  for (std::size_t v = 0; v < k_; ++v) m[v] = min(ha[v], hb[v]);
  bool ca = std::holds_alternative<ZsC>(a.p);
  bool cb = std::holds_alternative<ZsC>(b.p);
  if (ca && cb) {
    const auto& x = std::get<ZsC>(a.p).x;
    const auto& y = std::get<ZsC>(b.p).x;
    std::vector<std::int64_t> mc(d_);
    for (std::size_t i = 0; i < d_; ++i) mc[i] = std::min(x[i], y[i]);
    Element cm = tag(ZsC{mc});
    auto hm = hat(cm);
    bool exact = true, strict = true;
    for (std::size_t v = 0; v < k_; ++v) {
      if (!(hm[v] == m[v])) exact = false;
      if (!(hm[v] < m[v])) strict = false;
    }
    if (exact) return cm;
    if (!strict && !zs_is_zero(cm)) return std::nullopt;  // no infimum expressible
  }
  for (const auto& v : m)
    if (v.is_zero()) return std::nullopt;
  return tag(ZsS{std::move(m)});
}

SequenceDescriptor ZStableSg::approximants_impl(const Element& a) const {
  SequenceDescriptor d;
  if (std::holds_alternative<ZsC>(a.p)) {
    d.prefix = {a};
    d.tail = SequenceDescriptor::Tail::Constant;
    return d;
  }
  d.tail = SequenceDescriptor::Tail::Ascent;
  d.limit = a;
  return d;
}

Element ZStableSg::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  auto* s = std::get_if<ZsS>(&limit.p);
  if (!s) fail(ErrCode::BadDescriptor, "compact zstable elements have constant approximants");
  if (j > 55) j = 55;
  std::vector<ExtValue> out(k_);
  for (std::size_t v = 0; v < k_; ++v) {
    if (s->f[v].is_inf())
      out[v] = ExtValue(Rat(j + 1));
    else
      out[v] = ExtValue(s->f[v].finite() - s->f[v].finite() / Rat((std::int64_t)1 << (j + 1)));
  }
  return tag(ZsS{std::move(out)});
}

Element ZStableSg::infinity_impl(const Element& a) const {
  if (zs_is_zero(a)) return a;
  return tag(ZsS{std::vector<ExtValue>(k_, ExtValue::infinity())});
}

std::vector<Element> ZStableSg::enumerate(const FragParams& p) const {
  std::vector<Element> out;
  std::int64_t vb = std::min<std::int64_t>(p.value_bound, d_ > 1 ? 2 : 4);
  std::vector<std::int64_t> x(d_, 0);
  while (true) {
    out.push_back(tag(ZsC{x}));
    std::size_t i = 0;
    while (i < d_ && ++x[i] > vb) x[i++] = 0;
    if (i == d_) break;
  }
  std::vector<ExtValue> vals{ExtValue(Rat(1, 2)), ExtValue(Rat(1)), ExtValue(Rat(3, 2)),
                             ExtValue(Rat(2)), ExtValue::infinity()};
  std::vector<std::size_t> idx(k_, 0);
  while (true) {
    std::vector<ExtValue> f;
    for (auto i : idx) f.push_back(vals[i]);
    out.push_back(tag(ZsS{std::move(f)}));
    std::size_t i = 0;
    while (i < k_ && ++idx[i] == vals.size()) idx[i++] = 0;
    if (i == k_ || out.size() > 2000) break;
  }
  return out;
}

std::shared_ptr<const ZStableSg> make_zstable(std::size_t d, std::size_t k,
                                              std::vector<std::vector<Rat>> pairing) {
  return std::make_shared<ZStableSg>(d, k, std::move(pairing));
}

// --- AdjoinGroupSg ---------------------------------------------------------

AdjoinGroupSg::AdjoinGroupSg(std::shared_ptr<const ValueSemigroup> base,
                             std::vector<std::int64_t> invariant_factors)
    : base_(std::move(base)), inv_(std::move(invariant_factors)) {
  for (auto k : inv_)
    if (k < 0) fail(ErrCode::BadParam, "invariant factors must be nonnegative (0 = Z)");
  // probe: the non-compact part must absorb everything
  FragParams tiny;
  tiny.value_bound = 2;
  tiny.denom_bound = 2;
  for (const auto& s : base_->enumerate(tiny)) {
    if (ValueSemigroup::compact_tagged(s) || base_->eq(s, base_->zero())) continue;
    for (const auto& c : base_->enumerate(tiny)) {
      Element sum = base_->add(s, c);
      if (ValueSemigroup::compact_tagged(sum) && !ValueSemigroup::value_of(sum).is_zero())
        fail(ErrCode::NotAbsorbing, "non-compact part of the base is not absorbing");
    }
  }
}

std::string AdjoinGroupSg::describe() const {
  std::string g = "Z^0";
  if (!inv_.empty()) {
    g = "";
    for (std::size_t i = 0; i < inv_.size(); ++i)
      g += (i ? " x " : "") + (inv_[i] == 0 ? std::string("Z") : "Z/" + std::to_string(inv_[i]));
  }
  return "S_G(" + base_->describe() + ", G = " + g + ")";
}

bool AdjoinGroupSg::trivial_group() const {
  for (auto k : inv_)
    if (k != 1) return false;
  return true;
}

std::vector<std::int64_t> AdjoinGroupSg::gsum(const std::vector<std::int64_t>& a,
                                              const std::vector<std::int64_t>& b) const {
  std::vector<std::int64_t> out(inv_.size());
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    out[i] = a[i] + b[i];
    if (inv_[i] > 0) out[i] = ((out[i] % inv_[i]) + inv_[i]) % inv_[i];
  }
  return out;
}

Element AdjoinGroupSg::decorated(std::vector<std::int64_t> g, const Rat& x) const {
  Element e = tag(GroupCompact{std::move(g), ExtValue(x)});
  validate(e);
  return e;
}

void AdjoinGroupSg::validate(const Element& a) const {
  check_mine(a);
  if (auto* z = std::get_if<CompactV>(&a.p)) {
    if (!z->v.is_zero()) fail(ErrCode::ValidationError, "nonzero compacts carry a group label");
    return;
  }
  if (auto* gc = std::get_if<GroupCompact>(&a.p)) {
    if (gc->g.size() != inv_.size()) fail(ErrCode::ValidationError, "group label arity mismatch");
    for (std::size_t i = 0; i < inv_.size(); ++i)
      if (inv_[i] > 0 && (gc->g[i] < 0 || gc->g[i] >= inv_[i]))
        fail(ErrCode::ValidationError, "group label not reduced mod the invariant factor");
    if (gc->x.is_inf() || gc->x.is_zero() || !base_->in_compact_part(gc->x.finite()))
      fail(ErrCode::ValidationError, "decorated value must be a nonzero compact of the base");
    return;
  }
  if (std::get_if<SoftV>(&a.p)) {
    base_->validate(Element{base_.get(), a.p});
    return;
  }
  fail(ErrCode::ValidationError, "unexpected payload for adjoin_group");
}

Element AdjoinGroupSg::zero_impl() const { return tag(CompactV{ExtValue(Rat(0))}); }

bool AdjoinGroupSg::leq_impl(const Element& a, const Element& b) const {
  if (std::holds_alternative<CompactV>(a.p)) return true;  // zero is least
  if (std::holds_alternative<CompactV>(b.p)) return false;
  auto* ga = std::get_if<GroupCompact>(&a.p);
  auto* gb = std::get_if<GroupCompact>(&b.p);
  auto* sa = std::get_if<SoftV>(&a.p);
  auto* sb = std::get_if<SoftV>(&b.p);
  if (ga && gb) return (ga->x == gb->x && ga->g == gb->g) || ga->x < gb->x;
  if (ga && sb) return ga->x < sb->v;
  if (sa && gb) return sa->v <= gb->x;
  return sa->v <= sb->v;
}

Element AdjoinGroupSg::add_impl(const Element& a, const Element& b) const {
  if (std::holds_alternative<CompactV>(a.p)) return b;
  if (std::holds_alternative<CompactV>(b.p)) return a;
  auto* ga = std::get_if<GroupCompact>(&a.p);
  auto* gb = std::get_if<GroupCompact>(&b.p);
  ExtValue xa = ga ? ga->x : std::get<SoftV>(a.p).v;
  ExtValue xb = gb ? gb->x : std::get<SoftV>(b.p).v;
  if (ga && gb) return tag(GroupCompact{gsum(ga->g, gb->g), xa + xb});
  return tag(SoftV{xa + xb});  // the soft part absorbs
}

bool AdjoinGroupSg::way_below_impl(const Element& a, const Element& b) const {
  auto* sa = std::get_if<SoftV>(&a.p);
  auto* sb = std::get_if<SoftV>(&b.p);
  if (sa && sb) return sa->v < sb->v;
  return leq_impl(a, b);  // zero and decorated compacts are compact
}

SequenceDescriptor AdjoinGroupSg::approximants_impl(const Element& a) const {
  SequenceDescriptor d;
  if (!std::holds_alternative<SoftV>(a.p)) {
    d.prefix = {a};
    d.tail = SequenceDescriptor::Tail::Constant;
    return d;
  }
  d.tail = SequenceDescriptor::Tail::Ascent;
  d.limit = a;
  return d;
}

Element AdjoinGroupSg::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  auto* s = std::get_if<SoftV>(&limit.p);
  if (!s) fail(ErrCode::BadDescriptor, "compact elements have constant approximants");
  if (j > 55) j = 55;
  if (s->v.is_inf()) {
    if (base_->has_dense_soft()) return tag(SoftV{ExtValue(Rat(j + 1))});
    return tag(GroupCompact{std::vector<std::int64_t>(inv_.size(), 0), ExtValue(Rat(j + 1))});
  }
  Rat x = s->v.finite();
  return tag(SoftV{ExtValue(x - x / Rat((std::int64_t)1 << (j + 1)))});
}

Element AdjoinGroupSg::infinity_impl(const Element& a) const {
  if (std::holds_alternative<CompactV>(a.p)) return a;
  return tag(SoftV{ExtValue::infinity()});
}

std::vector<Element> AdjoinGroupSg::enumerate(const FragParams& p) const {
  std::vector<Element> out{zero_impl()};
  // soft part straight from the base
  FragParams q = p;
  q.value_bound = std::min<std::int64_t>(p.value_bound, 3);
  q.denom_bound = std::min<std::int64_t>(p.denom_bound, 4);
  for (const auto& e : base_->enumerate(q))
    if (!ValueSemigroup::compact_tagged(e)) out.push_back(tag(SoftV{ValueSemigroup::value_of(e)}));
  // decorated compacts with small labels
  std::vector<std::vector<std::int64_t>> labels{std::vector<std::int64_t>(inv_.size(), 0)};
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    std::vector<std::vector<std::int64_t>> more;
    for (auto g : labels) {
      std::vector<std::int64_t> opts = inv_[i] == 0 ? std::vector<std::int64_t>{-1, 1}
                                                    : std::vector<std::int64_t>{};
      for (std::int64_t v = 1; v < std::min<std::int64_t>(inv_[i], 3); ++v) opts.push_back(v);
      for (auto v : opts) {
        auto h = g;
        h[i] = v;
        more.push_back(h);
      }
    }
    labels.insert(labels.end(), more.begin(), more.end());
  }
  for (const auto& e : base_->enumerate(q)) {
    if (!ValueSemigroup::compact_tagged(e) || ValueSemigroup::value_of(e).is_zero()) continue;
    for (const auto& g : labels) out.push_back(tag(GroupCompact{g, ValueSemigroup::value_of(e)}));
  }
  return out;
}

std::shared_ptr<const AdjoinGroupSg> adjoin_group(std::shared_ptr<const ValueSemigroup> base,
                                                  std::vector<std::int64_t> invariant_factors) {
  return std::make_shared<AdjoinGroupSg>(std::move(base), std::move(invariant_factors));
}

// --- GluedSg ---------------------------------------------------------------

GluedSg::GluedSg(FiniteSpace X) : X_(std::move(X)) {
  X_.validate();
  if (!X_.connected()) fail(ErrCode::BadParam, "gluing needs a connected carrier");
}

std::string GluedSg::describe() const {
  return "(N x Z) glued with Lsc(" + std::to_string(X_.size()) + "-point space, Nbar)_nc";
}

Element GluedSg::pair(std::int64_t n, std::int64_t m) const {
  if (n < 1) fail(ErrCode::BadParam, "pair classes need n >= 1");
  return tag(PairNZ{n, m});
}

std::vector<ExtValue> GluedSg::values_of(const Element& a) { return std::get<ZsS>(a.p).f; }

bool GluedSg::fn_leq(const std::vector<ExtValue>& f, const std::vector<ExtValue>& g) const {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] <= g[i])) return false;
  return true;
}

Element GluedSg::fn(std::vector<ExtValue> values) const {
  Element e = tag(ZsS{std::move(values)});
  validate(e);
  return e;
}

Element GluedSg::indicator(std::uint32_t open_mask) const {
  if (!X_.is_open(open_mask)) fail(ErrCode::BadParam, "indicator of a non-open set");
  std::vector<ExtValue> v;
  for (std::size_t i = 0; i < X_.size(); ++i)
    v.push_back(ExtValue(Rat((open_mask >> i) & 1)));
  return fn(std::move(v));
}

void GluedSg::validate(const Element& a) const {
  check_mine(a);
  if (auto* z = std::get_if<CompactV>(&a.p)) {
    if (!z->v.is_zero()) fail(ErrCode::ValidationError, "only the zero class is untagged");
    return;
  }
  if (auto* pr = std::get_if<PairNZ>(&a.p)) {
    if (pr->n < 1) fail(ErrCode::ValidationError, "pair classes need n >= 1");
    return;
  }
  auto* fv = std::get_if<ZsS>(&a.p);
  if (!fv) fail(ErrCode::ValidationError, "unexpected payload for the glued semigroup");
  if (fv->f.size() != X_.size()) fail(ErrCode::ValidationError, "function arity mismatch");
  for (const auto& v : fv->f)
    if (!v.is_inf() && !(v.finite().is_integer()))
      fail(ErrCode::ValidationError, "function values live in Nbar");
  // lsc: every upper level set open
  for (const auto& t : fv->f) {
    if (t.is_zero()) continue;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < fv->f.size(); ++i)
      if (t <= fv->f[i]) mask |= (1u << i);
    if (!X_.is_open(mask)) fail(ErrCode::ValidationError, "upper level set is not open");
  }
  bool constant = true, all_inf = true;
  for (const auto& v : fv->f) {
    if (!(v == fv->f[0])) constant = false;
    if (!v.is_inf()) all_inf = false;
  }
  if (constant && !all_inf)
    fail(ErrCode::ValidationError, "constant finite functions are pair classes, not functions");
}

Element GluedSg::zero_impl() const { return tag(CompactV{ExtValue(Rat(0))}); }

bool GluedSg::leq_impl(const Element& a, const Element& b) const {
  if (std::holds_alternative<CompactV>(a.p)) return true;
  if (std::holds_alternative<CompactV>(b.p)) return false;
  auto* pa = std::get_if<PairNZ>(&a.p);
  auto* pb = std::get_if<PairNZ>(&b.p);
  if (pa && pb) return (pa->n == pb->n && pa->e == pb->e) || pa->n < pb->n;
  if (pa) {
    // (n, m) <= f iff the constant n lies below f
    for (const auto& v : values_of(b))
      if (!(ExtValue(Rat(pa->n)) <= v)) return false;
    return true;
  }
  if (pb) {
    for (const auto& v : values_of(a))
      if (!(v <= ExtValue(Rat(pb->n)))) return false;
    return true;
  }
  return fn_leq(values_of(a), values_of(b));
}

Element GluedSg::add_impl(const Element& a, const Element& b) const {
  if (std::holds_alternative<CompactV>(a.p)) return b;
  if (std::holds_alternative<CompactV>(b.p)) return a;
  auto* pa = std::get_if<PairNZ>(&a.p);
  auto* pb = std::get_if<PairNZ>(&b.p);
  if (pa && pb) return tag(PairNZ{pa->n + pb->n, pa->e + pb->e});
  // pairs enter function sums through the constant n*1
  std::vector<ExtValue> fa =
      pa ? std::vector<ExtValue>(X_.size(), ExtValue(Rat(pa->n))) : values_of(a);
  std::vector<ExtValue> fb =
      pb ? std::vector<ExtValue>(X_.size(), ExtValue(Rat(pb->n))) : values_of(b);
  std::vector<ExtValue> s(X_.size());
  for (std::size_t i = 0; i < X_.size(); ++i) s[i] = fa[i] + fb[i];
  Element e = tag(ZsS{std::move(s)});
  validate(e);  // connected carrier keeps sums nonconstant; loud check
  return e;
}

bool GluedSg::way_below_impl(const Element& a, const Element& b) const {
  if (!leq_impl(a, b)) return false;
  if (auto* fv = std::get_if<ZsS>(&a.p)) {
    for (const auto& v : fv->f)
      if (v.is_inf()) return false;  // infinite values are reached only in the limit
  }
  return true;
}

SequenceDescriptor GluedSg::approximants_impl(const Element& a) const {
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

Element GluedSg::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  auto* fv = std::get_if<ZsS>(&limit.p);
  if (!fv) fail(ErrCode::BadDescriptor, "pair classes have constant approximants");
  std::int64_t M = 1;
  bool all_inf = true;
  for (const auto& v : fv->f) {
    if (v.is_inf()) continue;
    all_inf = false;
    if (v.finite().num() > M) M = v.finite().num();
  }
  std::int64_t cap = M + j + 1;
  if (all_inf) return tag(PairNZ{cap, 0});  // constant caps are trivial pair classes
  std::vector<ExtValue> out;
  for (const auto& v : fv->f) out.push_back(min(v, ExtValue(Rat(cap))));
  return tag(ZsS{std::move(out)});
}

Element GluedSg::infinity_impl(const Element& a) const {
  if (std::holds_alternative<CompactV>(a.p)) return a;
  if (std::holds_alternative<PairNZ>(a.p))
    return tag(ZsS{std::vector<ExtValue>(X_.size(), ExtValue::infinity())});
  std::vector<ExtValue> out;
  for (const auto& v : values_of(a))
    out.push_back(v.is_zero() ? ExtValue(Rat(0)) : ExtValue::infinity());
  return tag(ZsS{std::move(out)});
}

std::vector<Element> GluedSg::enumerate(const FragParams& p) const {
  std::vector<Element> out{zero_impl()};
  std::int64_t nb = std::min<std::int64_t>(p.value_bound, 2);
  for (std::int64_t n = 1; n <= nb; ++n)
    for (std::int64_t m = -1; m <= 1; ++m) out.push_back(tag(PairNZ{n, m}));
  std::vector<ExtValue> vals{ExtValue(Rat(0)), ExtValue(Rat(1)), ExtValue(Rat(2)),
                             ExtValue::infinity()};
  std::vector<std::size_t> idx(X_.size(), 0);
  while (true) {
    std::vector<ExtValue> f;
    for (auto i : idx) f.push_back(vals[i]);
    Element e = tag(ZsS{std::move(f)});
    try {
      validate(e);
      out.push_back(e);
    } catch (const CuError&) {
    }
    std::size_t i = 0;
    while (i < X_.size() && ++idx[i] == vals.size()) idx[i++] = 0;
    if (i == X_.size()) break;
  }
  return out;
}

std::shared_ptr<const GluedSg> make_glued_three_point() {
  return std::make_shared<GluedSg>(chain_space({"p", "q", "r"}));
}

// --- VilladsenSg -----------------------------------------------------------

Element VilladsenSg::pair(std::int64_t r, std::int64_t e) const {
  if (r < 0) fail(ErrCode::BadParam, "rank coordinate must be nonnegative");
  return tag(PairNZ{r, e});
}

void VilladsenSg::validate(const Element& a) const {
  check_mine(a);
  auto* pr = std::get_if<PairNZ>(&a.p);
  if (!pr || pr->n < 0) fail(ErrCode::ValidationError, "elements are pairs (r, e) with r >= 0");
}

Element VilladsenSg::zero_impl() const { return tag(PairNZ{0, 0}); }

bool VilladsenSg::leq_impl(const Element& a, const Element& b) const {
  const auto& x = std::get<PairNZ>(a.p);
  const auto& y = std::get<PairNZ>(b.p);
  if (x.n == 0 && x.e == 0) return true;
  if (x.n == y.n && x.e == y.e) return true;
  return x.n + 2 <= y.n;  // the rank gap: strict comparison needs two extra ranks
}

Element VilladsenSg::add_impl(const Element& a, const Element& b) const {
  const auto& x = std::get<PairNZ>(a.p);
  const auto& y = std::get<PairNZ>(b.p);
  return tag(PairNZ{x.n + y.n, x.e + y.e});
}

bool VilladsenSg::way_below_impl(const Element& a, const Element& b) const {
  return leq_impl(a, b);  // the fragment is purely algebraic
}

std::vector<Element> VilladsenSg::enumerate(const FragParams& p) const {
  std::vector<Element> out;
  std::int64_t rb = std::min<std::int64_t>(p.value_bound, 4);
  for (std::int64_t r = 0; r <= rb; ++r)
    for (std::int64_t e = -2; e <= 2; ++e) out.push_back(tag(PairNZ{r, e}));
  return out;
}

std::shared_ptr<const VilladsenSg> make_villadsen_gap() {
  return std::make_shared<VilladsenSg>();
}

// --- SeqProdNbarSg ---------------------------------------------------------

namespace {

ExtValue seq_value(const SeqFun& f, std::int64_t j) {
  if (j < (std::int64_t)f.prefix.size()) return f.prefix[j];
  if (f.affine) return ExtValue(Rat(f.a * j + f.b));
  return f.cv;
}

bool seq_has_inf(const SeqFun& f) {
  for (const auto& v : f.prefix)
    if (v.is_inf()) return true;
  return !f.affine && f.cv.is_inf();
}

SeqFun seq_canon(SeqFun f) {
  if (f.affine && f.a == 0) {
    f.affine = false;
    f.cv = ExtValue(Rat(f.b));
  }
  while (!f.prefix.empty()) {
    std::int64_t j = (std::int64_t)f.prefix.size() - 1;
    ExtValue tail = f.affine ? ExtValue(Rat(f.a * j + f.b)) : f.cv;
    if (!(f.prefix.back() == tail)) break;
    f.prefix.pop_back();
  }
  // a chain over a bounded finite descriptor is that compact itself
  if (f.chain && !f.affine && !seq_has_inf(f)) f.chain = false;
  return f;
}

// pointwise comparison of two raw descriptors (prefixes plus symbolic tails)
bool seq_desc_leq(const SeqFun& x, const SeqFun& y) {
  std::int64_t J = (std::int64_t)std::max(x.prefix.size(), y.prefix.size());
  for (std::int64_t j = 0; j <= J; ++j)
    if (!(seq_value(x, j) <= seq_value(y, j))) return false;
  if (!x.affine && !y.affine) return x.cv <= y.cv;
  if (!x.affine && y.affine) return !x.cv.is_inf();  // already checked at J, ramp only grows
  if (x.affine && !y.affine) return y.cv.is_inf();
  if (x.a > y.a) return false;
  return true;  // equal slopes compared via J; smaller slope only falls behind
}

}  // namespace

ExtValue SeqProdNbarSg::value_at(const Element& a, std::int64_t j) {
  return seq_value(std::get<SeqFun>(a.p), j);
}

bool SeqProdNbarSg::is_chain(const Element& a) { return std::get<SeqFun>(a.p).chain; }

bool SeqProdNbarSg::bounded(const Element& a) const {
  const auto& f = std::get<SeqFun>(a.p);
  return !f.chain && !f.affine && !seq_has_inf(f);
}

bool SeqProdNbarSg::scale_contains(const Element& a) const {
  const auto& f = std::get<SeqFun>(a.p);
  return f.chain || bounded(a);  // sups of bounded compacts
}

Element SeqProdNbarSg::constant_desc(const ExtValue& v) const {
  SeqFun f;
  f.cv = v;
  f.chain = v.is_inf();  // infinite values only arise as sups of chains
  Element e = tag(seq_canon(std::move(f)));
  validate(e);
  return e;
}

Element SeqProdNbarSg::affine_desc(std::int64_t a, std::int64_t b) const {
  if (a < 0 || b < 0) fail(ErrCode::BadDescriptor, "ramp coefficients must be nonnegative");
  SeqFun f;
  f.affine = true;
  f.a = a;
  f.b = b;
  Element e = tag(seq_canon(std::move(f)));
  validate(e);
  return e;
}

Element SeqProdNbarSg::prefixed(std::vector<ExtValue> prefix, const ExtValue& tail) const {
  SeqFun f;
  f.prefix = std::move(prefix);
  f.cv = tail;
  f.chain = seq_has_inf(f);
  Element e = tag(seq_canon(std::move(f)));
  validate(e);
  return e;
}

Element SeqProdNbarSg::chain_sup(const Element& limit_desc) const {
  check_mine(limit_desc);
  SeqFun f = std::get<SeqFun>(limit_desc.p);
  f.chain = true;
  return tag(seq_canon(std::move(f)));
}

void SeqProdNbarSg::validate(const Element& a) const {
  check_mine(a);
  auto* f = std::get_if<SeqFun>(&a.p);
  if (!f) fail(ErrCode::ValidationError, "elements are sequence descriptors");
  for (const auto& v : f->prefix)
    if (!v.is_inf() && !v.finite().is_integer())
      fail(ErrCode::ValidationError, "descriptor values live in Nbar");
  if (f->affine && (f->a < 0 || f->b < 0))
    fail(ErrCode::BadDescriptor, "ramp coefficients must be nonnegative");
  if (!f->affine && !f->cv.is_inf() && !f->cv.finite().is_integer())
    fail(ErrCode::ValidationError, "descriptor values live in Nbar");
  if (!f->chain && seq_has_inf(*f))
    fail(ErrCode::ValidationError, "infinite values occur only in sup-of-chain classes");
}

Element SeqProdNbarSg::zero_impl() const {
  SeqFun f;
  f.cv = ExtValue(Rat(0));
  return tag(std::move(f));
}

bool SeqProdNbarSg::leq_impl(const Element& a, const Element& b) const {
  const auto& x = std::get<SeqFun>(a.p);
  const auto& y = std::get<SeqFun>(b.p);
  if (!x.chain && !y.chain) return seq_desc_leq(x, y);
  if (!x.chain) {
    // compact below a chain class: bounded and below the limit descriptor
    if (x.affine) return false;
    return seq_desc_leq(x, y);
  }
  // chain(L) <= z iff L <= z pointwise (both for compact and chain z)
  return seq_desc_leq(x, y);
}

Element SeqProdNbarSg::add_impl(const Element& a, const Element& b) const {
  const auto& x = std::get<SeqFun>(a.p);
  const auto& y = std::get<SeqFun>(b.p);
  SeqFun s;
  s.chain = x.chain || y.chain;
  std::size_t J = std::max(x.prefix.size(), y.prefix.size());
  for (std::size_t j = 0; j < J; ++j)
    s.prefix.push_back(seq_value(x, (std::int64_t)j) + seq_value(y, (std::int64_t)j));
  if (x.affine || y.affine) {
    std::int64_t xa = x.affine ? x.a : 0, xb;
    std::int64_t ya = y.affine ? y.a : 0, yb;
    // infinite constant tails force more prefix handling; fold them below
    bool xinf = !x.affine && x.cv.is_inf();
    bool yinf = !y.affine && y.cv.is_inf();
    if (xinf || yinf) {
      s.affine = false;
      s.cv = ExtValue::infinity();
      return tag(seq_canon(std::move(s)));
    }
    xb = x.affine ? x.b : x.cv.finite().num();
    yb = y.affine ? y.b : y.cv.finite().num();
    s.affine = true;
    s.a = xa + ya;
    s.b = xb + yb;
    return tag(seq_canon(std::move(s)));
  }
  s.cv = x.cv + y.cv;
  return tag(seq_canon(std::move(s)));
}

bool SeqProdNbarSg::way_below_impl(const Element& a, const Element& b) const {
  const auto& x = std::get<SeqFun>(a.p);
  if (x.chain) return false;  // sup-of-chain classes are never compactly contained
  return leq_impl(a, b);
}

SequenceDescriptor SeqProdNbarSg::approximants_impl(const Element& a) const {
  SequenceDescriptor d;
  if (!is_chain(a)) {
    d.prefix = {a};
    d.tail = SequenceDescriptor::Tail::Constant;
    return d;
  }
  d.tail = SequenceDescriptor::Tail::Ascent;
  d.limit = a;
  return d;
}

Element SeqProdNbarSg::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  const auto& f = std::get<SeqFun>(limit.p);
  if (!f.chain) fail(ErrCode::BadDescriptor, "compact descriptors have constant approximants");
  ExtValue cap{Rat(j + 1)};
  SeqFun out;
  for (const auto& v : f.prefix) out.prefix.push_back(min(v, cap));
  if (f.affine) {
    // extend the prefix through the ramp until it clears the cap
    std::int64_t i = (std::int64_t)f.prefix.size();
    while (seq_value(f, i) < cap) {
      out.prefix.push_back(seq_value(f, i));
      ++i;
      if (i > j + 2 + (std::int64_t)f.prefix.size()) break;
    }
    out.cv = cap;
  } else {
    out.cv = min(f.cv, cap);
  }
  return tag(seq_canon(std::move(out)));
}

Element SeqProdNbarSg::infinity_impl(const Element& a) const {
  const auto& f = std::get<SeqFun>(a.p);
  if (!f.chain && f.affine)
    fail(ErrCode::UnrecognizedClass,
         "multiples of an unbounded ramp leave the described fragment");
  SeqFun out;
  out.chain = true;
  for (const auto& v : f.prefix)
    out.prefix.push_back(v.is_zero() ? ExtValue(Rat(0)) : ExtValue::infinity());
  if (f.affine)
    out.cv = ExtValue::infinity();  // positive ramp tail
  else
    out.cv = f.cv.is_zero() ? ExtValue(Rat(0)) : ExtValue::infinity();
  return tag(seq_canon(std::move(out)));
}

std::vector<Element> SeqProdNbarSg::enumerate(const FragParams& p) const {
  std::vector<Element> out;
  std::int64_t vb = std::min<std::int64_t>(p.value_bound, 3);
  for (std::int64_t v = 0; v <= vb; ++v) out.push_back(constant_desc(ExtValue(Rat(v))));
  out.push_back(affine_desc(1, 0));
  out.push_back(affine_desc(1, 1));
  out.push_back(prefixed({ExtValue(Rat(2)), ExtValue(Rat(1))}, ExtValue(Rat(0))));
  out.push_back(constant_desc(ExtValue::infinity()));
  out.push_back(chain_sup(affine_desc(1, 0)));
  out.push_back(chain_sup(prefixed({ExtValue::infinity()}, ExtValue(Rat(0)))));
  return out;
}

std::shared_ptr<const SeqProdNbarSg> make_seq_product_nbar() {
  return std::make_shared<SeqProdNbarSg>();
}

}  // namespace culab
