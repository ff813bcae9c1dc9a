#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "culab/constructions.hpp"

namespace culab {

// --- functionals -----------------------------------------------------------
//
// F(S) is carried as a closed set of parameterized forms rather than an
// abstract cone; every computation here factors through finitely many
// functionals, so the cone topology is never materialized.
struct Functional {
  enum class Form { Zero, Scaling, VertexWeights, IdealExtended, InfinityOnNonzero };

  Form form = Form::Zero;
  SgPtr sg;
  ExtValue t{Rat(0)};                        // Scaling
  std::vector<ExtValue> w;                   // VertexWeights
  std::shared_ptr<const Functional> inner;   // IdealExtended
  std::shared_ptr<const Ideal> ideal;        // IdealExtended

  static Functional zero(SgPtr S);
  static Functional scaling(SgPtr S, const ExtValue& t);
  static Functional vertex_weights(SgPtr S, std::vector<ExtValue> w);
  static Functional infinity_on_nonzero(SgPtr S);
  static Functional ideal_extended(Functional lam, Ideal I);

  std::string describe() const;
};

// Generating family of F(S) for the kinds with a shipped parameterization
// (value semigroups, zstable, finite tables, products of value semigroups).
// UnknownFunctionalSpace otherwise.
std::vector<Functional> functional_space(const SgPtr& S);

ExtValue evaluate(const Functional& lam, const Element& a);  // exact, additive

// --- ranks and realization -------------------------------------------------
//
// The rank of an element is the evaluation map on the functional parameter
// space, kept in closed form: t |-> coeff * t over scaling families, and
// w |-> sum coeffs_i * w_i over vertex-weight cones.
struct RankFunction {
  enum class Kind { ScalingLinear, WeightLinear };

  Kind kind = Kind::ScalingLinear;
  ExtValue coeff{Rat(0)};
  std::vector<ExtValue> coeffs;

  ExtValue at(const ExtValue& t) const;
  ExtValue at(const std::vector<ExtValue>& w) const;
  bool eq(const RankFunction& other) const;
};

RankFunction rank_of(const SgPtr& S, const Element& a);

// alpha(f) = sup { x : rank(x) strictly under f }; resolved in closed form.
// The sup of the strict search set is always soft, so realizing the rank of
// a compact returns the soft element of the same value. NotRealizable when f
// is not in the recognized family for S.
Element alpha(const SgPtr& S, const RankFunction& f);

// lambda-tilde on S: lambda on I, infinity off I. Probe-verified.
Functional extend_from_ideal(const Functional& lam, const Ideal& I);

// Sup-continuous regularization of an additive order-preserving map given
// pointwise: agrees with the input on compacts, completed to the catalog
// family. NotMonotone when the input fails order preservation on probes.
Functional regularize(const SgPtr& S, const std::function<ExtValue(const Element&)>& raw);

// --- elementary-ideal detection --------------------------------------------

struct ElementaryReport {
  bool found = false;
  std::optional<Functional> lambda;
  std::optional<Ideal> ideal;       // {x : x <= infinity of the unit witness}
  std::int64_t scanned_denom_bound = 0;  // tags a "none" verdict with its scope
};

ElementaryReport detect_elementary(const SgPtr& S, std::int64_t denom_bound = 16);

}  // namespace culab
