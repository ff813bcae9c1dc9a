#include <algorithm>
#include <numeric>
#include <set>

#include "culab/catalog.hpp"

namespace culab {

// --- FiniteSpace -----------------------------------------------------------

bool FiniteSpace::is_open(std::uint32_t mask) const {
  return std::find(opens.begin(), opens.end(), mask) != opens.end();
}

void FiniteSpace::validate() const {
  if (points.empty()) fail(ErrCode::BadParam, "empty carrier space");
  if (points.size() > 20) fail(ErrCode::BadParam, "carrier space too large");
  std::uint32_t full = (points.size() == 32) ? ~0u : ((1u << points.size()) - 1);
  if (!is_open(0) || !is_open(full))
    fail(ErrCode::BadParam, "opens must contain the empty set and the full set");
  for (auto u : opens)
    for (auto v : opens) {
      if (!is_open(u | v)) fail(ErrCode::BadParam, "opens not closed under union");
      if (!is_open(u & v)) fail(ErrCode::BadParam, "opens not closed under intersection");
    }
}

bool FiniteSpace::connected() const {
  std::uint32_t full = (1u << points.size()) - 1;
  for (auto u : opens)
    if (u != 0 && u != full && is_open(full & ~u)) return false;
  return true;
}

FiniteSpace chain_space(const std::vector<std::string>& points) {
  FiniteSpace X;
  X.points = points;
  X.opens.push_back(0);
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    m |= (1u << i);
    X.opens.push_back(m);
  }
  X.validate();
  return X;
}

// --- ValueSemigroup --------------------------------------------------------

ValueSemigroup::ValueSemigroup(CompactPart cp, std::int64_t m, bool dense_soft)
    : cp_(cp), m_(m), dense_soft_(dense_soft) {
  if (cp == CompactPart::PowersOfM && m < 1) fail(ErrCode::BadParam, "base m must be >= 1");
}

std::string ValueSemigroup::kind() const {
  if (cp_ == CompactPart::AllRationals) return "interval_value";
  return dense_soft_ ? "softened" : "nbar";
}

std::string ValueSemigroup::describe() const {
  if (cp_ == CompactPart::AllRationals) return "[0,inf) u (0,inf]";
  if (!dense_soft_) return "Nbar";
  return "N[1/" + std::to_string(m_) + "] u (0,inf]";
}

bool ValueSemigroup::in_compact_part(const Rat& q) const {
  if (q.negative()) return false;
  if (cp_ == CompactPart::AllRationals) return true;
  std::int64_t d = q.den();
  if (m_ == 1) return d == 1;
  while (d > 1) {
    std::int64_t g = std::gcd(d, m_);
    if (g == 1) return false;
    while (d % g == 0) d /= g;
  }
  return true;
}

Element ValueSemigroup::compact(const Rat& q) const {
  Element e = tag(CompactV{ExtValue(q)});
  validate(e);
  return e;
}

Element ValueSemigroup::soft(const ExtValue& x) const {
  Element e = tag(SoftV{x});
  validate(e);
  return e;
}

ExtValue ValueSemigroup::value_of(const Element& a) {
  if (auto* c = std::get_if<CompactV>(&a.p)) return c->v;
  return std::get<SoftV>(a.p).v;
}

bool ValueSemigroup::compact_tagged(const Element& a) {
  return std::holds_alternative<CompactV>(a.p);
}

void ValueSemigroup::validate(const Element& a) const {
  check_mine(a);
  if (auto* c = std::get_if<CompactV>(&a.p)) {
    if (c->v.is_inf()) fail(ErrCode::ValidationError, "the top element is the soft s(inf)");
    if (!in_compact_part(c->v.finite()))
      fail(ErrCode::ValidationError, c->v.str() + " is not in the compact part of " + describe());
    return;
  }
  if (auto* s = std::get_if<SoftV>(&a.p)) {
    if (s->v.is_zero()) fail(ErrCode::ValidationError, "s(0) is rejected; zero is compact");
    if (!dense_soft_ && !s->v.is_inf())
      fail(ErrCode::ValidationError, describe() + " has no finite soft elements");
    return;
  }
  fail(ErrCode::ValidationError, "value semigroup payload must be c(q) or s(x)");
}

Element ValueSemigroup::zero_impl() const { return tag(CompactV{ExtValue(Rat(0))}); }

bool ValueSemigroup::leq_impl(const Element& a, const Element& b) const {
  ExtValue x = value_of(a), y = value_of(b);
  bool ca = compact_tagged(a), cb = compact_tagged(b);
  if (ca && !cb) return x < y;  // c_x <= s_y iff x < y
  return x <= y;                // all other combinations compare by value
}

Element ValueSemigroup::add_impl(const Element& a, const Element& b) const {
  ExtValue x = value_of(a), y = value_of(b);
  if (compact_tagged(a) && compact_tagged(b)) return tag(CompactV{x + y});
  ExtValue s = x + y;
  return tag(SoftV{s});
}

bool ValueSemigroup::way_below_impl(const Element& a, const Element& b) const {
  ExtValue x = value_of(a), y = value_of(b);
  if (compact_tagged(a)) {
    if (compact_tagged(b)) return x <= y;  // compacts: << is <=
    return x < y;
  }
  // soft below compact: s_x << c_y iff s_x <= c_y (b compact)
  if (compact_tagged(b)) return x <= y;
  return x < y;  // soft below soft is strict
}

std::optional<Element> ValueSemigroup::wedge_impl(const Element& a, const Element& b) const {
  // The family is totally ordered (soft wins ties against compact).
  if (leq_impl(a, b)) return a;
  return b;
}

SequenceDescriptor ValueSemigroup::approximants_impl(const Element& a) const {
  SequenceDescriptor d;
  if (compact_tagged(a)) {
    d.prefix = {a};
    d.tail = SequenceDescriptor::Tail::Constant;
    return d;
  }
  d.tail = SequenceDescriptor::Tail::Ascent;
  d.limit = a;
  return d;
}

Element ValueSemigroup::nth_approximant(const Element& limit, int j) const {
  check_mine(limit);
  if (compact_tagged(limit)) fail(ErrCode::BadDescriptor, "compact elements have no ascent");
  ExtValue x = value_of(limit);
  if (x.is_inf()) return tag(SoftV{ExtValue(Rat(j + 1))});
  if (j > 55) j = 55;  // beyond any gap resolvable at catalog bounds
  Rat margin = x.finite() / Rat((std::int64_t)1 << (j + 1));
  return tag(SoftV{ExtValue(x.finite() - margin)});
}

Element ValueSemigroup::sup_of_affine(const SequenceDescriptor& d) const {
  if (d.aff_a > 0) return top();
  return tag(CompactV{ExtValue(Rat(d.aff_b))});
}

Element ValueSemigroup::infinity_impl(const Element& a) const {
  if (value_of(a).is_zero()) return zero_impl();
  return top();
}

std::vector<Element> ValueSemigroup::enumerate(const FragParams& p) const {
  std::set<Element, ElementLess> out;
  out.insert(zero_impl());
  auto add_val = [&](const Rat& q) {
    if (in_compact_part(q)) out.insert(tag(CompactV{ExtValue(q)}));
    if (dense_soft_ && !q.is_zero()) out.insert(tag(SoftV{ExtValue(q)}));
  };
  if (cp_ == CompactPart::PowersOfM && m_ > 1) {
    std::int64_t den = 1;
    while (den <= p.denom_bound) {
      for (std::int64_t k = 0; k <= p.value_bound * den; ++k) add_val(Rat(k, den));
      if (den > p.denom_bound / m_) break;
      den *= m_;
    }
  } else {
    for (std::int64_t k = 0; k <= p.value_bound; ++k) add_val(Rat(k));
  }
  if (dense_soft_ || cp_ == CompactPart::AllRationals) {
    for (std::int64_t q = 1; q <= p.denom_bound; ++q)
      for (std::int64_t n = 1; n <= p.value_bound * q; ++n)
        if (std::gcd(n, q) == 1) add_val(Rat(n, q));
  }
  out.insert(top());
  return {out.begin(), out.end()};
}

std::shared_ptr<const ValueSemigroup> make_nbar() {
  return std::make_shared<ValueSemigroup>(ValueSemigroup::CompactPart::PowersOfM, 1, false);
}

std::shared_ptr<const ValueSemigroup> make_softened(std::int64_t m) {
  if (m < 1) fail(ErrCode::BadParam, "softened base must be a positive integer");
  return std::make_shared<ValueSemigroup>(ValueSemigroup::CompactPart::PowersOfM, m, true);
}

std::shared_ptr<const ValueSemigroup> make_tau_interval() {
  return std::make_shared<ValueSemigroup>(ValueSemigroup::CompactPart::AllRationals, 0, true);
}

// --- FiniteTableSg ---------------------------------------------------------

FiniteTableSg::FiniteTableSg(FiniteTable t) : t_(std::move(t)) {
  std::size_t n = t_.names.size();
  if (n == 0) fail(ErrCode::InvalidTable, "empty element list");
  if (t_.add.size() != n || t_.leq.size() != n)
    fail(ErrCode::InvalidTable, "table dimensions do not match the element list");
  for (auto& row : t_.add) {
    if (row.size() != n) fail(ErrCode::InvalidTable, "ragged add table");
    for (auto v : row)
      if (v >= n) fail(ErrCode::InvalidTable, "add table entry out of range");
  }
  for (auto& row : t_.leq)
    if (row.size() != n) fail(ErrCode::InvalidTable, "ragged order table");
  auto idx = [&](std::uint32_t i, std::uint32_t j) { return t_.add[i][j]; };
  for (std::uint32_t i = 0; i < n; ++i) {
    if (idx(0, i) != i || idx(i, 0) != i) fail(ErrCode::InvalidTable, "zero-neutrality fails");
    if (!t_.leq[i][i]) fail(ErrCode::InvalidTable, "reflexivity fails");
    if (!t_.leq[0][i]) fail(ErrCode::InvalidTable, "zero is not the least element");
    for (std::uint32_t j = 0; j < n; ++j) {
      if (idx(i, j) != idx(j, i)) fail(ErrCode::InvalidTable, "commutativity fails");
      if (t_.leq[i][j] && t_.leq[j][i] && i != j) fail(ErrCode::InvalidTable, "antisymmetry fails");
      for (std::uint32_t k = 0; k < n; ++k) {
        if (idx(idx(i, j), k) != idx(i, idx(j, k)))
          fail(ErrCode::InvalidTable, "associativity fails");
        if (t_.leq[i][j] && t_.leq[j][k] && !t_.leq[i][k])
          fail(ErrCode::InvalidTable, "transitivity fails");
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        if (t_.leq[i][j] && !t_.leq[idx(i, k)][idx(j, k)])
          fail(ErrCode::InvalidTable, "order is not compatible with addition");
}

std::string FiniteTableSg::describe() const {
  std::string s = "{";
  for (std::size_t i = 0; i < t_.names.size(); ++i) s += (i ? "," : "") + t_.names[i];
  return s + "}";
}

Element FiniteTableSg::at(std::uint32_t i) const {
  if (i >= t_.names.size()) fail(ErrCode::BadParam, "table index out of range");
  return tag(TabIdx{i});
}

const std::string& FiniteTableSg::name_of(const Element& a) const {
  check_mine(a);
  return t_.names[std::get<TabIdx>(a.p).i];
}

void FiniteTableSg::validate(const Element& a) const {
  check_mine(a);
  auto* t = std::get_if<TabIdx>(&a.p);
  if (!t || t->i >= t_.names.size()) fail(ErrCode::ValidationError, "bad table element");
}

Element FiniteTableSg::zero_impl() const { return tag(TabIdx{0}); }

bool FiniteTableSg::leq_impl(const Element& a, const Element& b) const {
  return t_.leq[std::get<TabIdx>(a.p).i][std::get<TabIdx>(b.p).i];
}

Element FiniteTableSg::add_impl(const Element& a, const Element& b) const {
  return tag(TabIdx{t_.add[std::get<TabIdx>(a.p).i][std::get<TabIdx>(b.p).i]});
}

bool FiniteTableSg::way_below_impl(const Element& a, const Element& b) const {
  return leq_impl(a, b);  // increasing sequences stabilize: every element is compact
}

std::optional<Element> FiniteTableSg::wedge_impl(const Element& a, const Element& b) const {
  std::vector<std::uint32_t> lower;
  for (std::uint32_t i = 0; i < t_.names.size(); ++i)
    if (t_.leq[i][std::get<TabIdx>(a.p).i] && t_.leq[i][std::get<TabIdx>(b.p).i])
      lower.push_back(i);
  for (auto g : lower) {
    bool greatest = true;
    for (auto l : lower)
      if (!t_.leq[l][g]) { greatest = false; break; }
    if (greatest) return tag(TabIdx{g});
  }
  return std::nullopt;
}

std::vector<Element> FiniteTableSg::enumerate(const FragParams&) const {
  std::vector<Element> out;
  for (std::uint32_t i = 0; i < t_.names.size(); ++i) out.push_back(tag(TabIdx{i}));
  return out;
}

std::shared_ptr<const FiniteTableSg> make_finite_table(FiniteTable t) {
  return std::make_shared<FiniteTableSg>(std::move(t));
}

std::shared_ptr<const FiniteTableSg> make_zero_one_infinity() {
  FiniteTable t;
  t.names = {"0", "1", "inf"};
  t.add = {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}};
  t.leq = {{true, true, true}, {false, true, true}, {false, false, true}};
  return make_finite_table(std::move(t));
}

std::shared_ptr<const FiniteTableSg> make_zero_infinity() {
  FiniteTable t;
  t.names = {"0", "inf"};
  t.add = {{0, 1}, {1, 1}};
  t.leq = {{true, true}, {false, true}};
  return make_finite_table(std::move(t));
}

std::shared_ptr<const FiniteTableSg> make_trivial() {
  FiniteTable t;
  t.names = {"0"};
  t.add = {{0}};
  t.leq = {{true}};
  return make_finite_table(std::move(t));
}

}  // namespace culab
