#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "culab/semigroup.hpp"

namespace culab {

// --- finite topological spaces -------------------------------------------

struct FiniteSpace {
  std::vector<std::string> points;
  std::vector<std::uint32_t> opens;  // bitmasks over points, closed under union/intersection

  std::size_t size() const { return points.size(); }
  bool is_open(std::uint32_t mask) const;
  void validate() const;  // topology axioms
  bool connected() const;
};

FiniteSpace chain_space(const std::vector<std::string>& points);  // opens are down-prefixes

// --- value semigroups: Nbar, D union (0,inf], [0,inf) union (0,inf] -------
//
// One implementation covers the whole family. Elements are tagged values:
// compact c_q with q in the compact part D, and soft s_x with x in (0,inf].
// Mixed laws: s_x <= c_y iff x <= y; c_x <= s_y iff x < y; c_x + s_y = s_(x+y).
// (One worked example in the literature also asserts "c_x <= s_x", which
// contradicts the displayed rules and the Cu(Z) computation; the rules win
// and that sentence is treated as a typo.)
class ValueSemigroup final : public Semigroup {
 public:
  enum class CompactPart { PowersOfM, AllRationals };

  ValueSemigroup(CompactPart cp, std::int64_t m, bool dense_soft);

  std::string kind() const override;
  std::string describe() const override;

  bool in_compact_part(const Rat& q) const;
  bool has_dense_soft() const { return dense_soft_; }
  std::int64_t base() const { return m_; }

  Element compact(const Rat& q) const;
  Element soft(const ExtValue& x) const;
  Element top() const { return soft(ExtValue::infinity()); }

  // Tagged value of an element (magnitude, ignoring the compact/soft tag).
  static ExtValue value_of(const Element& a);
  static bool compact_tagged(const Element& a);

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  std::optional<Element> wedge_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;
  Element sup_of_affine(const SequenceDescriptor& d) const override;

 private:
  CompactPart cp_;
  std::int64_t m_;
  bool dense_soft_;
};

std::shared_ptr<const ValueSemigroup> make_nbar();
std::shared_ptr<const ValueSemigroup> make_softened(std::int64_t m);
std::shared_ptr<const ValueSemigroup> make_tau_interval();  // [0,inf) u (0,inf]

// --- finite tabulated semigroups ------------------------------------------

struct FiniteTable {
  std::vector<std::string> names;              // names[0] is the zero element
  std::vector<std::vector<std::uint32_t>> add; // total add table
  std::vector<std::vector<bool>> leq;          // order relation
};

class FiniteTableSg final : public Semigroup {
 public:
  explicit FiniteTableSg(FiniteTable t);  // raises InvalidTable naming the violated axiom

  std::string kind() const override { return "finite_table"; }
  std::string describe() const override;
  std::size_t size() const { return t_.names.size(); }
  Element at(std::uint32_t i) const;
  const std::string& name_of(const Element& a) const;

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  std::optional<Element> wedge_impl(const Element& a, const Element& b) const override;

 private:
  FiniteTable t_;
};

std::shared_ptr<const FiniteTableSg> make_finite_table(FiniteTable t);
std::shared_ptr<const FiniteTableSg> make_zero_one_infinity();  // {0,1,inf}, 1+1=inf
std::shared_ptr<const FiniteTableSg> make_zero_infinity();      // {0,inf}
std::shared_ptr<const FiniteTableSg> make_trivial();            // {0}

// --- lower semicontinuous functions on a finite space ---------------------

class FiniteLscSg final : public Semigroup {
 public:
  FiniteLscSg(FiniteSpace X, SgPtr target, std::optional<ExtValue> cap);

  std::string kind() const override { return "lsc_finite"; }
  std::string describe() const override;
  const FiniteSpace& space() const { return X_; }
  const Semigroup& target() const { return *target_; }

  Element fn(std::vector<Element> values) const;       // validates lsc + cap
  Element indicator(std::uint32_t open_mask) const;    // 1_U for an open U

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  std::optional<Element> wedge_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;

 private:
  bool upper_sets_open(const std::vector<Element>& v) const;
  FiniteSpace X_;
  SgPtr target_;
  std::optional<ExtValue> cap_;
};

std::shared_ptr<const FiniteLscSg> make_lsc_finite(FiniteSpace X, SgPtr target,
                                                   std::optional<ExtValue> cap = std::nullopt);

// --- step functions on [0,1] ----------------------------------------------
//
// Elements are target-valued step functions with rational cut points; lower
// semicontinuity pins the value at a cut below its neighbours. Way-below is
// the level-set rule: closure{f >= t} contained in {g >= t} for every value
// threshold t of f (the closed-support criterion applied per level).
class IntervalLscSg final : public Semigroup {
 public:
  // endpoint_bases: optional denominator bases constraining the compact part
  // of f(0) and f(1) (the dimension-drop pincer); 0 means unconstrained.
  IntervalLscSg(std::shared_ptr<const ValueSemigroup> target, std::int64_t base0, std::int64_t base1);

  std::string kind() const override { return "lsc_interval"; }
  std::string describe() const override;
  const ValueSemigroup& target() const { return *target_; }

  Element step(std::vector<Rat> cuts, std::vector<Element> pieces, std::vector<Element> at) const;
  Element indicator(const Rat& lo, const Rat& hi) const;     // 1_{(lo,hi)}
  Element constant(const Element& value) const;              // constant target value

  // Exact integral of the magnitude over [0,1].
  ExtValue integral(const Element& f) const;
  bool is_constant(const Element& f) const;

  // Candidates w with lo + w ~ hi: pointwise value differences followed by the
  // lsc envelope (cut values clamped under their neighbouring pieces).
  std::vector<Element> complement_guesses(const Element& hi, const Element& lo) const;

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  std::optional<Element> wedge_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;

 private:
  Element canon(StepFn f) const;
  std::shared_ptr<const ValueSemigroup> target_;
  std::int64_t base0_, base1_;
};

std::shared_ptr<const IntervalLscSg> make_lsc_interval(std::shared_ptr<const ValueSemigroup> target);
std::shared_ptr<const IntervalLscSg> make_dimension_drop();  // Lsc([0,1], N[1/6] u (0,inf]), pincer 2 / 3

// --- finite products -------------------------------------------------------

class ProductSg final : public Semigroup {
 public:
  explicit ProductSg(std::vector<SgPtr> factors);

  std::string kind() const override { return "product"; }
  std::string describe() const override;
  std::size_t arity() const { return fs_.size(); }
  const Semigroup& factor(std::size_t i) const { return *fs_[i]; }
  SgPtr factor_ptr(std::size_t i) const { return fs_[i]; }

  Element tuple(std::vector<Element> parts) const;
  static const std::vector<Element>& parts(const Element& a);

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  std::optional<Element> wedge_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;

 private:
  std::vector<SgPtr> fs_;
};

std::shared_ptr<const ProductSg> make_product(std::vector<SgPtr> factors);

// --- Z-stable model: V u LAff_{++} by vertex tuples ------------------------

class ZStableSg final : public Semigroup {
 public:
  // V = N^d, k extreme traces, pairing: d x k strictly positive rationals
  ZStableSg(std::size_t d, std::size_t k, std::vector<std::vector<Rat>> pairing);

  std::string kind() const override { return "zstable"; }
  std::string describe() const override;
  std::size_t d() const { return d_; }
  std::size_t k() const { return k_; }

  Element comp(std::vector<std::int64_t> x) const;
  Element soft(std::vector<ExtValue> f) const;
  std::vector<ExtValue> hat(const Element& a) const;  // rank tuple of a compact (or soft values)

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  std::optional<Element> wedge_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;

 private:
  std::size_t d_, k_;
  std::vector<std::vector<Rat>> pairing_;
};

std::shared_ptr<const ZStableSg> make_zstable(std::size_t d, std::size_t k,
                                              std::vector<std::vector<Rat>> pairing);

// --- S_G: group-decorated compacts over a value semigroup ------------------
//
// S_G = ({0} u (G x S_c^*)) u S_nc with (g,x) + y = x + y and
// (g,x) <= (h,y) iff (x = y and g = h) or x < y. Requires the non-compact
// part to be absorbing (checked on a probe fragment at construction).
class AdjoinGroupSg final : public Semigroup {
 public:
  // invariant_factors: 0 entries mean a Z summand, k > 0 a Z/k summand.
  AdjoinGroupSg(std::shared_ptr<const ValueSemigroup> base, std::vector<std::int64_t> invariant_factors);

  std::string kind() const override { return "adjoin_group"; }
  std::string describe() const override;
  const ValueSemigroup& base() const { return *base_; }
  bool trivial_group() const;

  Element decorated(std::vector<std::int64_t> g, const Rat& x) const;  // x > 0 compact
  Element soft(const ExtValue& x) const { return tag(SoftV{x}); }

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;

 private:
  std::vector<std::int64_t> gsum(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b) const;
  std::shared_ptr<const ValueSemigroup> base_;
  std::vector<std::int64_t> inv_;
};

std::shared_ptr<const AdjoinGroupSg> adjoin_group(std::shared_ptr<const ValueSemigroup> base,
                                                  std::vector<std::int64_t> invariant_factors);

// --- glued sphere-analogue: (N_{>0} x Z) u Lsc(X, Nbar)_nc -----------------
//
// Pairs model bundle classes ((n,m) <= (n',m') iff equal or n < n'); the
// mixed laws go through the constant function n*1: (n,m) <= f iff n*1 <= f,
// f <= (n,m) iff f <= n*1, (n,m) + f = n*1 + f. Over a chain-topology carrier
// the sum of nonconstant lsc functions stays nonconstant, so the gluing is
// closed under addition.
class GluedSg final : public Semigroup {
 public:
  explicit GluedSg(FiniteSpace X);

  std::string kind() const override { return "glued"; }
  std::string describe() const override;
  const FiniteSpace& space() const { return X_; }

  Element pair(std::int64_t n, std::int64_t m) const;   // n >= 1
  Element fn(std::vector<ExtValue> values) const;       // nonconstant (or constant inf) lsc
  Element indicator(std::uint32_t open_mask) const;

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;

 private:
  static std::vector<ExtValue> values_of(const Element& a);
  bool fn_leq(const std::vector<ExtValue>& f, const std::vector<ExtValue>& g) const;
  FiniteSpace X_;
};

std::shared_ptr<const GluedSg> make_glued_three_point();

// --- Villadsen-type gap fragment: N x Z, order r' >= r + 2 -----------------

class VilladsenSg final : public Semigroup {
 public:
  VilladsenSg() = default;
  std::string kind() const override { return "villadsen_gap"; }
  Element pair(std::int64_t r, std::int64_t e) const;

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
};

std::shared_ptr<const VilladsenSg> make_villadsen_gap();

// --- described fragment of the sequence product of Nbar --------------------

class SeqProdNbarSg final : public Semigroup {
 public:
  SeqProdNbarSg() = default;
  std::string kind() const override { return "seq_product_nbar"; }

  Element constant_desc(const ExtValue& v) const;                   // j -> v
  Element affine_desc(std::int64_t a, std::int64_t b) const;        // j -> a*j + b
  Element prefixed(std::vector<ExtValue> prefix, const ExtValue& tail) const;
  Element chain_sup(const Element& limit_desc) const;               // sup_n min(limit, n)

  static ExtValue value_at(const Element& a, std::int64_t j);
  static bool is_chain(const Element& a);
  bool bounded(const Element& a) const;
  bool scale_contains(const Element& a) const;  // scale generated by bounded descriptors

  std::vector<Element> enumerate(const FragParams& p) const override;
  void validate(const Element& a) const override;
  Element nth_approximant(const Element& limit, int j) const override;

 protected:
  Element zero_impl() const override;
  bool leq_impl(const Element& a, const Element& b) const override;
  Element add_impl(const Element& a, const Element& b) const override;
  bool way_below_impl(const Element& a, const Element& b) const override;
  SequenceDescriptor approximants_impl(const Element& a) const override;
  Element infinity_impl(const Element& a) const override;
};

std::shared_ptr<const SeqProdNbarSg> make_seq_product_nbar();

}  // namespace culab
