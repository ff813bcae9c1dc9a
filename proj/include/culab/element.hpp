#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "culab/rational.hpp"

namespace culab {

class Semigroup;
struct Element;

// --- payload shapes -------------------------------------------------------
// Every element of every catalog semigroup is one of these. The compactness
// tag is explicit (CompactV vs SoftV) rather than inferred, so way-below is a
// total closed-form decision.

struct CompactV { ExtValue v; };            // compact value (always finite)
struct SoftV { ExtValue v; };               // soft value in (0, inf]
struct Tuple { std::vector<Element> parts; };
struct FnTable { std::vector<Element> at; };  // one target value per point of a finite space

// Step function on [0,1] with rational cut points. pieces[i] is the value on
// the open interval (cuts[i], cuts[i+1]); at[i] is the value at cuts[i].
struct StepFn {
  std::vector<Rat> cuts;          // 0 = cuts[0] < ... < cuts[k] = 1
  std::vector<Element> pieces;    // size k
  std::vector<Element> at;        // size k+1
};

struct GroupCompact {               // (g, x) with x a nonzero compact value
  std::vector<std::int64_t> g;
  ExtValue x;
};

struct PairNZ { std::int64_t n; std::int64_t e; };  // pair fragments (N x Z and friends)

struct ZsC { std::vector<std::int64_t> x; };   // compact part of the Z-stable model (N^d)
struct ZsS { std::vector<ExtValue> f; };       // soft part: vertex values in ((0,inf])^k

// Described element of the sequence product of countably many copies of Nbar.
// values(j) = prefix[j] for j < prefix.size(), then the tail: Const(cv) or the
// affine ramp a*j + b. chain marks the sup-of-chain class sup_n min(values, n).
struct SeqFun {
  std::vector<ExtValue> prefix;
  bool affine = false;
  ExtValue cv;                   // Const tail value (may be inf when chain)
  std::int64_t a = 0, b = 0;     // affine tail (finite)
  bool chain = false;
};

struct TabIdx { std::uint32_t i; };  // element of a finite tabulated semigroup

using Payload = std::variant<CompactV, SoftV, Tuple, FnTable, StepFn, GroupCompact, PairNZ,
                             ZsC, ZsS, SeqFun, TabIdx>;

struct Element {
  const Semigroup* sg = nullptr;
  Payload p;
};

// Structural comparison (canonical forms make this semantic equality within a
// fixed semigroup). Provides the strict weak order used by fragment sets.
bool payload_eq(const Payload& a, const Payload& b);
bool payload_less(const Payload& a, const Payload& b);

inline bool operator==(const Element& a, const Element& b) {
  return a.sg == b.sg && payload_eq(a.p, b.p);
}

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const {
    if (a.sg != b.sg) return a.sg < b.sg;
    return payload_less(a.p, b.p);
  }
};

std::string payload_str(const Payload& p);
inline std::string to_string(const Element& e) { return payload_str(e.p); }

}  // namespace culab
