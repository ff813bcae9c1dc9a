#pragma once

#include <functional>
#include <string>
#include <vector>

#include "culab/semigroup.hpp"

namespace culab {

// A finite, canonicalized slice of a semigroup: the additive closure of a
// generator list up to a depth, or a handle's own enumeration.
struct Fragment {
  SgPtr sg;
  std::vector<Element> elements;  // deduped, zero included
  bool complete = false;          // true when this is the entire semigroup

  static Fragment generate(SgPtr sg, std::vector<Element> generators, int depth,
                           std::size_t max_size = 400);
  static Fragment enumerated(SgPtr sg, const FragParams& p = {});
};

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

struct AxiomReport {
  std::string axiom_id;
  Verdict verdict = Verdict::Pass;
  std::vector<Element> witness;  // replayable on fail
  std::int64_t tuples = 0;
  std::string note;
};

enum class Axiom { O1, O2, O3, O4, O5, O6, O6plus, WC, Riesz, AlmostDiv };
const char* axiom_name(Axiom a);
Axiom axiom_from_name(const std::string& s);  // BadParam on unknown

AxiomReport check_axiom(const Semigroup& S, Axiom ax, const Fragment& frag,
                        const FragParams& p = {});

AxiomReport check_almost_unperforation(const Semigroup& S, const Fragment& frag, int n_max);

// evaluators: additive maps S -> [0, inf] supplied by the functionals module
AxiomReport check_strict_comparison(const Semigroup& S, const Fragment& frag,
                                    const std::vector<std::function<ExtValue(const Element&)>>& fns);

bool is_simple(const Semigroup& S, const Fragment& frag);

}  // namespace culab
