#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "culab/element.hpp"
#include "culab/errors.hpp"

namespace culab {

// Finitely described increasing sequence: a finite prefix plus one of a
// closed set of tail rules. Keeping the tails closed is what makes suprema
// (and the way-below oracle) decidable.
struct SequenceDescriptor {
  enum class Tail {
    Constant,     // stays at the last prefix element
    Ascent,       // the canonical strictly increasing approximants of `limit`
    AffineIndex,  // term j is the value a*j + b (value-kind semigroups / ramps)
  };

  std::vector<Element> prefix;
  Tail tail = Tail::Constant;
  std::optional<Element> limit;  // Ascent
  std::int64_t aff_a = 0, aff_b = 0;
};

// Bounds used when enumerating elements and searching witnesses.
struct FragParams {
  int depth = 4;                  // closure depth for generated fragments
  std::int64_t denom_bound = 16;  // max denominator of enumerated rationals
  std::int64_t value_bound = 8;   // max magnitude of enumerated values
  int n_max = 12;                 // multiplier bound (almost unperforation etc.)
};

// A catalog semigroup: immutable bundle of exact decision procedures.
// Handles are created once and shared; elements reference their handle.
class Semigroup {
 public:
  virtual ~Semigroup() = default;

  virtual std::string kind() const = 0;
  virtual std::string describe() const { return kind(); }

  Element zero() const;

  bool leq(const Element& a, const Element& b) const;
  Element add(const Element& a, const Element& b) const;
  bool way_below(const Element& a, const Element& b) const;
  bool is_compact(const Element& a) const { return way_below(a, a); }
  bool eq(const Element& a, const Element& b) const { return leq(a, b) && leq(b, a); }

  // Least upper bound of a described increasing sequence.
  Element sup(const SequenceDescriptor& d) const;

  // Order-theoretic infimum where the catalog kind guarantees one.
  std::optional<Element> wedge(const Element& a, const Element& b) const;

  // A descriptor d with sup(d) = a and consecutive terms way-below each other.
  SequenceDescriptor approximants(const Element& a) const;

  // j-th term of the canonical strictly increasing sequence with supremum
  // `limit` (used by Ascent tails); only defined for non-compact limits.
  virtual Element nth_approximant(const Element& limit, int j) const;

  // sup of n*a over n; closed form per catalog.
  Element infinity_of(const Element& a) const;

  // Representative generating set within the given bounds, zero included.
  virtual std::vector<Element> enumerate(const FragParams& p) const = 0;

  // Structural validation of a payload against this handle's invariants.
  virtual void validate(const Element& a) const = 0;

  // Parse/print hooks are kept in the CLI; elements print via to_string.

 protected:
  virtual Element zero_impl() const = 0;
  virtual bool leq_impl(const Element& a, const Element& b) const = 0;
  virtual Element add_impl(const Element& a, const Element& b) const = 0;
  virtual bool way_below_impl(const Element& a, const Element& b) const = 0;
  virtual std::optional<Element> wedge_impl(const Element& a, const Element& b) const;
  virtual SequenceDescriptor approximants_impl(const Element& a) const;
  virtual Element infinity_impl(const Element& a) const;
  virtual Element sup_of_affine(const SequenceDescriptor& d) const;

  void check_same(const Element& a, const Element& b) const;
  void check_mine(const Element& a) const;
  Element tag(Payload p) const { return Element{this, std::move(p)}; }
};

using SgPtr = std::shared_ptr<const Semigroup>;

// Term j of a descriptor (j past the prefix follows the tail rule).
Element descriptor_term(const SequenceDescriptor& d, int j);

// Checks that the first `terms` terms of d are increasing in S.
void require_increasing(const Semigroup& S, const SequenceDescriptor& d, int terms = 6);

// Descriptor-based oracle for compact containment: a is way below b iff some
// term of the canonical approximant sequence of b dominates a. Cross-checked
// against the closed forms in tests.
bool way_below_oracle(const Semigroup& S, const Element& a, const Element& b);

}  // namespace culab
