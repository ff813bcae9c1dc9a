#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "culab/axioms.hpp"
#include "culab/catalog.hpp"

namespace culab {

// --- ideals ----------------------------------------------------------------
//
// An ideal is carried by its membership test together with its largest
// element omega (ideals here are sup-closed, so omega exists and absorbs the
// ideal). Principal ideals remember their generator.
struct Ideal {
  SgPtr ambient;
  Element omega;
  std::function<bool(const Element&)> contains;
  std::optional<Element> generator;
};

Ideal ideal_generated(SgPtr S, const Element& a);  // {x : x <= inf_a}
Ideal zero_ideal(SgPtr S);
Ideal full_ideal(SgPtr S);  // everything reachable within default bounds

// A stand-in for the unit of the stabilization: inf of the sum of a default
// enumeration. For every catalog kind this dominates the whole handle.
Element full_element(const SgPtr& S);

// --- quotients -------------------------------------------------------------
//
// a <=_I b iff a <= b + omega. Elements are canonical ambient representatives
// (ideal-supported parts zeroed out).
class QuotientSg final : public Semigroup {
 public:
  QuotientSg(SgPtr ambient, Ideal ideal);  // NotIdeal on probe failure

  std::string kind() const override { return "quotient"; }
  std::string describe() const override;
  const Semigroup& ambient() const { return *amb_; }
  const Ideal& ideal() const { return ideal_; }

  Element from_ambient(const Element& a) const;  // canonical class of a
  Element to_ambient(const Element& a) const;    // the representative

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
  Element canon(const Element& amb_elt) const;
  SgPtr amb_;
  Ideal ideal_;
};

std::shared_ptr<const QuotientSg> quotient(SgPtr S, Ideal I);

// --- W-semigroups and the gamma / tau completions --------------------------
//
// A countable positively ordered monoid with an additive auxiliary relation,
// described by a carrier handle, a probe set, and the relation. The same
// shape serves the gamma-completion (W-semigroups) and the tau-construction
// (Q-semigroups); only the recognition rules differ.
struct WSemigroupDescriptor {
  enum class Aux {
    Leq,          // a < b iff a <= b
    WayBelow,     // a < b iff a << b
    BelowFinite,  // a < b iff a finite and a <= b (the tau interval relation)
    Custom,
  };

  SgPtr carrier;
  std::vector<Element> elements;  // probe set, zero included
  Aux aux = Aux::Custom;
  std::function<bool(const Element&, const Element&)> custom;

  bool prec(const Element& a, const Element& b) const;
};

WSemigroupDescriptor w_compact_part(std::shared_ptr<const ValueSemigroup> V,
                                    const FragParams& p = {});  // (compacts, <=)
WSemigroupDescriptor w_way_below(SgPtr S, const FragParams& p = {});
WSemigroupDescriptor w_trivial();
WSemigroupDescriptor tau_interval_input(const FragParams& p = {});  // ([0,inf], <_1)

// Completion of the classes of prec-increasing sequences; recognized per
// catalog (the carrier of a recognized descriptor already realizes its
// completion). NotAuxiliary when the relation fails the auxiliary axioms on
// the probe; UnrecognizedClass when no catalog recognition applies.
SgPtr gamma_completion(const WSemigroupDescriptor& W);

// The canonical W-morphism alpha into the completion.
Element gamma_alpha(const WSemigroupDescriptor& W, const SgPtr& completed, const Element& x);

// Class of a described prec-increasing sequence in the completion
// (eventually-constant => compact; ascent to a limit => that limit's class).
Element gamma_class(const WSemigroupDescriptor& W, const SgPtr& completed,
                    const SequenceDescriptor& d);

// Paths (-inf, 0] -> S sampled at finitely many times; constant before the
// earliest sample. sample_times decrease from 0; values align with them.
struct PathDescriptor {
  std::vector<Rat> sample_times;
  std::vector<Element> values;
};

SgPtr tau_completion(const WSemigroupDescriptor& Q);
Element tau_class(const WSemigroupDescriptor& Q, const SgPtr& completed, const PathDescriptor& p);

// --- morphisms and direct limits -------------------------------------------
//
// Closed set of morphism shapes; arbitrary functions are not accepted, so the
// Cu-morphism contract is checkable at construction.
struct MorphismDescriptor {
  enum class Kind { Identity, ScaleBy, Coordinate, Integration, Table };

  Kind mkind = Kind::Identity;
  SgPtr domain, codomain;
  Rat scale = Rat(1);                             // ScaleBy
  std::vector<std::size_t> coords;                // Coordinate: out i = in coords[i]
  std::vector<std::pair<Element, Element>> table; // Table

  static MorphismDescriptor identity(SgPtr S);
  static MorphismDescriptor scale_by(SgPtr S, const Rat& q);
  static MorphismDescriptor coordinate(SgPtr dom, SgPtr cod, std::vector<std::size_t> coords);
  static MorphismDescriptor integration(std::shared_ptr<const IntervalLscSg> dom);
};

Element apply_morphism(const MorphismDescriptor& m, const Element& x);

// Probes the Cu-morphism contract (0, +, <=, <<) on a fragment; raises
// MorphismMismatch on violation.
void check_cu_morphism(const MorphismDescriptor& m, const std::vector<Element>& probe);

SgPtr direct_limit(const std::vector<SgPtr>& stages, const std::vector<MorphismDescriptor>& maps);
SgPtr stationary_limit(SgPtr stage, const MorphismDescriptor& endo);

// Image of a stage-i element in the recognized limit (the handle returned by
// direct_limit for the same data).
Element limit_embed(const std::vector<SgPtr>& stages, const std::vector<MorphismDescriptor>& maps,
                    const SgPtr& limit, std::size_t i, const Element& x);
Element stationary_embed(const SgPtr& stage, const MorphismDescriptor& endo, const SgPtr& limit,
                         std::size_t i, const Element& x);

// --- products and ultraproducts --------------------------------------------

SgPtr cu_product(std::vector<SgPtr> factors);  // empty -> {0}

struct Ultrafilter {
  std::size_t n = 0;                // index set {0, ..., n-1}
  std::vector<std::uint32_t> sets;  // member subsets as bitmasks
};

std::size_t principal_index(const Ultrafilter& U);  // NotUltrafilter if not one

// Quotient of the product by the ideal c_U of tuples supported off the
// principal index.
std::shared_ptr<const QuotientSg> ultraproduct(const std::vector<SgPtr>& factors,
                                               const Ultrafilter& U);
Ideal c_u_ideal(const std::vector<SgPtr>& factors, const Ultrafilter& U);

// --- Grothendieck group and interpolation ----------------------------------

struct GroupDescriptor {
  std::string name;       // "Z", "Z[1/m]", "Z^2", ...
  std::size_t rank = 1;
  std::int64_t base = 1;  // inverted prime base for "Z[1/m]"
};

struct GrothendieckResult {
  GroupDescriptor group;
  AxiomReport interpolation;  // witness: quadruple as (pos, neg) element pairs
};

// Formal differences of a cancellative fragment (absorbing elements dropped);
// interpolation checked on the box of differences. NotCancellative when the
// fragment fails a cancellation probe.
GrothendieckResult grothendieck_interpolation(const Fragment& M);

}  // namespace culab
