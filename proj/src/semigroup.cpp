#include "culab/semigroup.hpp"

namespace culab {

void Semigroup::check_mine(const Element& a) const {
  if (a.sg != this) fail(ErrCode::MixedSemigroup, "element does not belong to " + kind());
}

void Semigroup::check_same(const Element& a, const Element& b) const {
  check_mine(a);
  check_mine(b);
}

Element Semigroup::zero() const { return zero_impl(); }

bool Semigroup::leq(const Element& a, const Element& b) const {
  check_same(a, b);
  return leq_impl(a, b);
}

Element Semigroup::add(const Element& a, const Element& b) const {
  check_same(a, b);
  return add_impl(a, b);
}

bool Semigroup::way_below(const Element& a, const Element& b) const {
  check_same(a, b);
  return way_below_impl(a, b);
}

std::optional<Element> Semigroup::wedge(const Element& a, const Element& b) const {
  check_same(a, b);
  return wedge_impl(a, b);
}

std::optional<Element> Semigroup::wedge_impl(const Element& a, const Element& b) const {
  // Comparable pairs always have an infimum; kinds with full wedges override.
  if (leq_impl(a, b)) return a;
  if (leq_impl(b, a)) return b;
  return std::nullopt;
}

Element Semigroup::nth_approximant(const Element&, int) const {
  fail(ErrCode::BadDescriptor, kind() + " has no ascent approximants");
}

Element Semigroup::sup_of_affine(const SequenceDescriptor&) const {
  fail(ErrCode::BadDescriptor, kind() + " does not accept affine-index tails");
}

Element Semigroup::infinity_of(const Element& a) const {
  check_mine(a);
  return infinity_impl(a);
}

Element Semigroup::infinity_impl(const Element& a) const {
  // Fallback for kinds where multiples stabilize (finite tables etc.).
  Element cur = a;
  for (int i = 0; i < 64; ++i) {
    Element next = add_impl(cur, a);
    if (eq(next, cur)) return cur;
    cur = next;
  }
  fail(ErrCode::Internal, "infinity_of did not stabilize in " + kind());
}

SequenceDescriptor Semigroup::approximants(const Element& a) const {
  check_mine(a);
  return approximants_impl(a);
}

SequenceDescriptor Semigroup::approximants_impl(const Element& a) const {
  if (!is_compact(a))
    fail(ErrCode::Internal, kind() + " lacks approximants for non-compact elements");
  SequenceDescriptor d;
  d.prefix = {a};
  d.tail = SequenceDescriptor::Tail::Constant;
  return d;
}

Element descriptor_term(const SequenceDescriptor& d, int j) {
  if (j < (int)d.prefix.size()) return d.prefix[j];
  switch (d.tail) {
    case SequenceDescriptor::Tail::Constant:
      if (d.prefix.empty()) fail(ErrCode::BadDescriptor, "constant tail with empty prefix");
      return d.prefix.back();
    case SequenceDescriptor::Tail::Ascent: {
      if (!d.limit) fail(ErrCode::BadDescriptor, "ascent tail without limit");
      return d.limit->sg->nth_approximant(*d.limit, j);
    }
    case SequenceDescriptor::Tail::AffineIndex: {
      // Terms are the compact values a*j + b of a value-kind semigroup.
      const Semigroup* sg =
          !d.prefix.empty() ? d.prefix.front().sg : (d.limit ? d.limit->sg : nullptr);
      if (!sg) fail(ErrCode::BadDescriptor, "affine tail without anchor element");
      Element t{sg, CompactV{ExtValue(Rat(d.aff_a) * Rat(j) + Rat(d.aff_b))}};
      sg->validate(t);
      return t;
    }
  }
  fail(ErrCode::Internal, "bad tail");
}

void require_increasing(const Semigroup& S, const SequenceDescriptor& d, int terms) {
  int upto = std::max<int>(terms, (int)d.prefix.size() + 2);
  for (int j = 0; j + 1 < upto; ++j) {
    Element a = descriptor_term(d, j);
    Element b = descriptor_term(d, j + 1);
    if (!S.leq(a, b))
      fail(ErrCode::NotIncreasing, "descriptor term " + std::to_string(j) + " exceeds its successor");
  }
}

Element Semigroup::sup(const SequenceDescriptor& d) const {
  require_increasing(*this, d);
  switch (d.tail) {
    case SequenceDescriptor::Tail::Constant:
      return d.prefix.back();
    case SequenceDescriptor::Tail::Ascent: {
      if (!d.limit) fail(ErrCode::BadDescriptor, "ascent tail without limit");
      check_mine(*d.limit);
      return *d.limit;
    }
    case SequenceDescriptor::Tail::AffineIndex:
      return sup_of_affine(d);
  }
  fail(ErrCode::Internal, "bad tail");
}

bool way_below_oracle(const Semigroup& S, const Element& a, const Element& b) {
  // a << b iff some term of the canonical approximant chain of b dominates a.
  // (The chain is cofinal among sequences with supremum b, so this matches
  // the sequential definition on catalog kinds.)
  SequenceDescriptor d = S.approximants(b);
  if (d.tail == SequenceDescriptor::Tail::Constant) return S.leq(a, b);
  for (int j = 0; j < 64; ++j)
    if (S.leq(a, descriptor_term(d, j))) return true;
  return false;
}

}  // namespace culab
