#include "culab/functionals.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace culab {

namespace {

const ValueSemigroup* as_value(const Semigroup* S) {
  return dynamic_cast<const ValueSemigroup*>(S);
}
const ZStableSg* as_zstable(const Semigroup* S) { return dynamic_cast<const ZStableSg*>(S); }
const ProductSg* as_product(const Semigroup* S) { return dynamic_cast<const ProductSg*>(S); }
const FiniteTableSg* as_table(const Semigroup* S) { return dynamic_cast<const FiniteTableSg*>(S); }

// products are supported when every factor is a value semigroup
bool value_product(const ProductSg* P) {
  if (!P) return false;
  for (std::size_t i = 0; i < P->arity(); ++i)
    if (!as_value(&P->factor(i))) return false;
  return true;
}

std::vector<ExtValue> magnitudes(const ProductSg* P, const Element& a) {
  std::vector<ExtValue> out;
  for (const auto& part : ProductSg::parts(a)) out.push_back(ValueSemigroup::value_of(part));
  (void)P;
  return out;
}

ExtValue dot(const std::vector<ExtValue>& w, const std::vector<ExtValue>& v) {
  if (w.size() != v.size()) fail(ErrCode::BadParam, "weight arity mismatch");
  ExtValue total{Rat(0)};
  for (std::size_t i = 0; i < w.size(); ++i) total = total + w[i] * v[i];
  return total;
}

FragParams probe_params() {
  FragParams p;
  p.value_bound = 4;
  p.denom_bound = 4;
  return p;
}

}  // namespace

// --- Functional factories --------------------------------------------------

Functional Functional::zero(SgPtr S) {
  Functional f;
  f.form = Form::Zero;
  f.sg = std::move(S);
  return f;
}

Functional Functional::scaling(SgPtr S, const ExtValue& t) {
  if (t.is_zero()) return zero(std::move(S));
  Functional f;
  f.form = Form::Scaling;
  f.sg = std::move(S);
  f.t = t;
  if (!as_value(f.sg.get())) fail(ErrCode::UnknownFunctionalSpace, "scaling needs a value semigroup");
  return f;
}

Functional Functional::vertex_weights(SgPtr S, std::vector<ExtValue> w) {
  Functional f;
  f.form = Form::VertexWeights;
  f.sg = std::move(S);
  f.w = std::move(w);
  auto* Z = as_zstable(f.sg.get());
  auto* P = as_product(f.sg.get());
  if (Z && f.w.size() == Z->k()) return f;
  if (value_product(P) && f.w.size() == P->arity()) return f;
  fail(ErrCode::UnknownFunctionalSpace, "vertex weights need a zstable or value-product handle");
}

Functional Functional::infinity_on_nonzero(SgPtr S) {
  Functional f;
  f.form = Form::InfinityOnNonzero;
  f.sg = std::move(S);
  return f;
}

Functional Functional::ideal_extended(Functional lam, Ideal I) {
  if (lam.sg.get() != I.ambient.get())
    fail(ErrCode::NotIdeal, "inner functional and ideal live in different semigroups");
  Functional f;
  f.form = Form::IdealExtended;
  f.sg = lam.sg;
  f.inner = std::make_shared<const Functional>(std::move(lam));
  f.ideal = std::make_shared<const Ideal>(std::move(I));
  return f;
}

std::string Functional::describe() const {
  std::ostringstream os;
  switch (form) {
    case Form::Zero: os << "zero"; break;
    case Form::Scaling: os << "scaling(" << t.str() << ")"; break;
    case Form::VertexWeights: {
      os << "weights(";
      for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << w[i].str();
      os << ")";
      break;
    }
    case Form::IdealExtended: os << "extend(" << inner->describe() << ")"; break;
    case Form::InfinityOnNonzero: os << "infinity_on_nonzero"; break;
  }
  return os.str();
}

// --- functional_space ------------------------------------------------------

std::vector<Functional> functional_space(const SgPtr& S) {
  std::vector<Functional> out;
  out.push_back(Functional::zero(S));
  if (as_value(S.get())) {
    out.push_back(Functional::scaling(S, ExtValue(Rat(1))));
    out.push_back(Functional::infinity_on_nonzero(S));
    return out;
  }
  if (auto* Z = as_zstable(S.get())) {
    for (std::size_t i = 0; i < Z->k(); ++i) {
      std::vector<ExtValue> e(Z->k(), ExtValue(Rat(0)));
      e[i] = ExtValue(Rat(1));
      out.push_back(Functional::vertex_weights(S, std::move(e)));
    }
    out.push_back(Functional::infinity_on_nonzero(S));
    return out;
  }
  if (auto* P = as_product(S.get()); value_product(P)) {
    for (std::size_t j = 0; j < P->arity(); ++j) {
      std::vector<ExtValue> e(P->arity(), ExtValue(Rat(0)));
      e[j] = ExtValue(Rat(1));
      Functional coord = Functional::vertex_weights(S, std::move(e));
      out.push_back(coord);
      // the extension of the coordinate functional from the coordinate ideal
      auto* V = as_value(&P->factor(j));
      std::vector<Element> unit;
      for (std::size_t i = 0; i < P->arity(); ++i)
        unit.push_back(i == j ? V->compact(Rat(1)) : P->factor(i).zero());
      out.push_back(Functional::ideal_extended(coord, ideal_generated(S, P->tuple(unit))));
    }
    out.push_back(Functional::infinity_on_nonzero(S));
    return out;
  }
  if (auto* T = as_table(S.get())) {
    // {0, inf}-valued functionals, one per principal ideal
    for (std::uint32_t i = 0; i < T->size(); ++i)
      out.push_back(Functional::ideal_extended(Functional::zero(S), ideal_generated(S, T->at(i))));
    out.push_back(Functional::infinity_on_nonzero(S));
    return out;
  }
  fail(ErrCode::UnknownFunctionalSpace, "no functional parameterization for " + S->kind());
}

// --- evaluate --------------------------------------------------------------

ExtValue evaluate(const Functional& lam, const Element& a) {
  lam.sg->validate(a);
  switch (lam.form) {
    case Functional::Form::Zero: return ExtValue(Rat(0));
    case Functional::Form::Scaling: return lam.t * ValueSemigroup::value_of(a);
    case Functional::Form::VertexWeights: {
      if (auto* Z = as_zstable(lam.sg.get())) return dot(lam.w, Z->hat(a));
      return dot(lam.w, magnitudes(as_product(lam.sg.get()), a));
    }
    case Functional::Form::IdealExtended:
      if (lam.ideal->contains(a)) return evaluate(*lam.inner, a);
      return ExtValue::infinity();
    case Functional::Form::InfinityOnNonzero:
      return lam.sg->eq(a, lam.sg->zero()) ? ExtValue(Rat(0)) : ExtValue::infinity();
  }
  fail(ErrCode::Internal, "bad functional form");
}

// --- ranks -----------------------------------------------------------------

ExtValue RankFunction::at(const ExtValue& s) const {
  if (kind != Kind::ScalingLinear) fail(ErrCode::BadParam, "rank is not over a scaling family");
  return coeff * s;
}

ExtValue RankFunction::at(const std::vector<ExtValue>& ws) const {
  if (kind != Kind::WeightLinear) fail(ErrCode::BadParam, "rank is not over a weight family");
  return dot(coeffs, ws);
}

bool RankFunction::eq(const RankFunction& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::ScalingLinear) return coeff == other.coeff;
  return coeffs == other.coeffs;
}

RankFunction rank_of(const SgPtr& S, const Element& a) {
  S->validate(a);
  RankFunction r;
  if (as_value(S.get())) {
    r.kind = RankFunction::Kind::ScalingLinear;
    r.coeff = ValueSemigroup::value_of(a);
    return r;
  }
  if (auto* Z = as_zstable(S.get())) {
    r.kind = RankFunction::Kind::WeightLinear;
    r.coeffs = Z->hat(a);
    return r;
  }
  if (auto* P = as_product(S.get()); value_product(P)) {
    r.kind = RankFunction::Kind::WeightLinear;
    r.coeffs = magnitudes(P, a);
    return r;
  }
  fail(ErrCode::UnknownFunctionalSpace, "no rank parameterization for " + S->kind());
}

// --- alpha -----------------------------------------------------------------

Element alpha(const SgPtr& S, const RankFunction& f) {
  if (auto* V = as_value(S.get())) {
    if (f.kind != RankFunction::Kind::ScalingLinear)
      fail(ErrCode::NotRealizable, "rank target has the wrong shape for " + S->kind());
    if (f.coeff.is_zero()) return S->zero();
    if (f.coeff.is_inf()) return V->top();
    // sup of the strict search set {x : rank(x) << f} is the soft element
    if (!V->has_dense_soft())
      fail(ErrCode::NotRealizable, "no soft element of value " + f.coeff.str());
    return V->soft(f.coeff);
  }
  if (auto* Z = as_zstable(S.get())) {
    if (f.kind != RankFunction::Kind::WeightLinear || f.coeffs.size() != Z->k())
      fail(ErrCode::NotRealizable, "rank target has the wrong shape for " + S->kind());
    bool all_zero = true, all_pos = true;
    for (const auto& c : f.coeffs) {
      if (!c.is_zero()) all_zero = false;
      if (c.is_zero()) all_pos = false;
    }
    if (all_zero) return S->zero();
    if (!all_pos) fail(ErrCode::NotRealizable, "rank target is not strictly positive");
    return Z->soft(f.coeffs);
  }
  fail(ErrCode::NotRealizable, "alpha unsupported for " + S->kind());
}

// --- extension from an ideal -----------------------------------------------

Functional extend_from_ideal(const Functional& lam, const Ideal& I) {
  if (lam.sg.get() != I.ambient.get())
    fail(ErrCode::NotIdeal, "functional and ideal live in different semigroups");
  const SgPtr& S = lam.sg;
  std::vector<Element> probe = S->enumerate(probe_params());
  bool full = true, zero_only = true;
  for (const auto& a : probe) {
    if (!I.contains(a)) full = false;
    if (I.contains(a) && !S->eq(a, S->zero())) zero_only = false;
  }
  if (full) return lam;
  if (zero_only && lam.form == Functional::Form::Zero) return Functional::infinity_on_nonzero(S);
  Functional ext = Functional::ideal_extended(lam, I);
  // probe the functional laws of the extension
  for (const auto& a : probe)
    for (const auto& b : probe) {
      if (S->leq(a, b) && !(evaluate(ext, a) <= evaluate(ext, b)))
        fail(ErrCode::NotIdeal, "extension fails monotonicity on the probe");
      if (!(evaluate(ext, S->add(a, b)) == evaluate(ext, a) + evaluate(ext, b)))
        fail(ErrCode::NotIdeal, "extension fails additivity on the probe");
    }
  return ext;
}

// --- regularization --------------------------------------------------------

Functional regularize(const SgPtr& S, const std::function<ExtValue(const Element&)>& raw) {
  // the regularization is determined by the values on compacts (soft values
  // are recomputed as suprema over approximants), so only the compact part of
  // the input has to be order-preserving
  std::vector<Element> probe = S->enumerate(probe_params());
  for (const auto& a : probe) {
    if (!S->is_compact(a)) continue;
    for (const auto& b : probe)
      if (S->is_compact(b) && S->leq(a, b) && !(raw(a) <= raw(b)))
        fail(ErrCode::NotMonotone, "input is not order-preserving on the probe");
  }
  if (auto* V = as_value(S.get())) return Functional::scaling(S, raw(V->compact(Rat(1))));
  if (auto* P = as_product(S.get()); value_product(P)) {
    std::vector<ExtValue> w;
    for (std::size_t j = 0; j < P->arity(); ++j) {
      std::vector<Element> unit;
      for (std::size_t i = 0; i < P->arity(); ++i)
        unit.push_back(i == j ? as_value(&P->factor(i))->compact(Rat(1)) : P->factor(i).zero());
      w.push_back(raw(P->tuple(unit)));
    }
    bool all_zero = std::all_of(w.begin(), w.end(), [](const ExtValue& v) { return v.is_zero(); });
    if (all_zero) return Functional::zero(S);
    return Functional::vertex_weights(S, std::move(w));
  }
  fail(ErrCode::UnknownFunctionalSpace, "no regularization family for " + S->kind());
}

// --- elementary-ideal detection --------------------------------------------

namespace {

// value set of lam on the fragment is exactly an initial run of Nbar and lam
// restricted to the witness ideal is an order-isomorphism onto it
bool elementary_witness(const SgPtr& S, const Functional& lam, const std::vector<Element>& frag,
                        Ideal& out_ideal) {
  bool has_zero = false, has_one = false, has_inf = false;
  std::int64_t max_finite = 0;
  std::set<std::int64_t> finite_vals;
  for (const auto& a : frag) {
    ExtValue v = evaluate(lam, a);
    if (v.is_inf()) {
      has_inf = true;
      continue;
    }
    if (!v.finite().is_integer()) return false;
    std::int64_t n = v.finite().num();
    finite_vals.insert(n);
    max_finite = std::max(max_finite, n);
    if (n == 0) has_zero = true;
    if (n == 1) has_one = true;
  }
  if (!has_zero || !has_one || !has_inf) return false;
  for (std::int64_t n = 0; n <= max_finite; ++n)
    if (!finite_vals.count(n)) return false;
  // unit witness and its ideal; the functional must be infinite off the
  // ideal and an order-isomorphism on it
  for (const auto& u : frag) {
    if (!(evaluate(lam, u) == ExtValue(Rat(1)))) continue;
    Ideal I = ideal_generated(S, u);
    bool ok = true;
    for (const auto& a : frag)
      if (!I.contains(a) && !evaluate(lam, a).is_inf()) {
        ok = false;
        break;
      }
    for (const auto& a : frag) {
      if (!ok) break;
      if (!I.contains(a)) continue;
      for (const auto& b : frag) {
        if (!I.contains(b)) continue;
        if (S->leq(a, b) != (evaluate(lam, a) <= evaluate(lam, b))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      out_ideal = std::move(I);
      return true;
    }
  }
  return false;
}

}  // namespace

ElementaryReport detect_elementary(const SgPtr& S, std::int64_t denom_bound) {
  ElementaryReport rep;
  rep.scanned_denom_bound = denom_bound;
  FragParams p;
  p.denom_bound = denom_bound;
  p.value_bound = 8;
  std::vector<Element> frag = S->enumerate(p);

  std::vector<Functional> candidates = functional_space(S);
  if (as_value(S.get()))
    for (std::int64_t q = 1; q <= denom_bound; ++q)
      for (std::int64_t n = 1; n <= denom_bound; ++n)
        candidates.push_back(Functional::scaling(S, ExtValue(Rat(n, q))));

  for (const auto& lam : candidates) {
    if (lam.form == Functional::Form::Zero || lam.form == Functional::Form::InfinityOnNonzero)
      continue;  // their value sets collapse; never an isomorphism onto Nbar
    Ideal I = zero_ideal(S);
    if (elementary_witness(S, lam, frag, I)) {
      rep.found = true;
      rep.lambda = lam;
      rep.ideal = std::move(I);
      return rep;
    }
  }
  return rep;
}

}  // namespace culab
