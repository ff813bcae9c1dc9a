#include "culab/element.hpp"

#include <sstream>

namespace culab {

namespace {

int cmp_ext(const ExtValue& a, const ExtValue& b) {
  if (a == b) return 0;
  return a <= b ? -1 : 1;
}

int cmp_payload(const Payload& a, const Payload& b);

int cmp_vec(const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp_payload(a[i].p, b[i].p);
    if (c != 0) return c;
  }
  return 0;
}

template <class T>
int cmp_scalar_vec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

int cmp_ext_vec(const std::vector<ExtValue>& a, const std::vector<ExtValue>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp_ext(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

int cmp_payload(const Payload& a, const Payload& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  struct V {
    const Payload& other;
    int operator()(const CompactV& x) const { return cmp_ext(x.v, std::get<CompactV>(other).v); }
    int operator()(const SoftV& x) const { return cmp_ext(x.v, std::get<SoftV>(other).v); }
    int operator()(const Tuple& x) const { return cmp_vec(x.parts, std::get<Tuple>(other).parts); }
    int operator()(const FnTable& x) const { return cmp_vec(x.at, std::get<FnTable>(other).at); }
    int operator()(const StepFn& x) const {
      const auto& y = std::get<StepFn>(other);
      if (int c = cmp_scalar_vec(x.cuts, y.cuts)) return c;
      if (int c = cmp_vec(x.pieces, y.pieces)) return c;
      return cmp_vec(x.at, y.at);
    }
    int operator()(const GroupCompact& x) const {
      const auto& y = std::get<GroupCompact>(other);
      if (int c = cmp_ext(x.x, y.x)) return c;
      return cmp_scalar_vec(x.g, y.g);
    }
    int operator()(const PairNZ& x) const {
      const auto& y = std::get<PairNZ>(other);
      if (x.n != y.n) return x.n < y.n ? -1 : 1;
      if (x.e != y.e) return x.e < y.e ? -1 : 1;
      return 0;
    }
    int operator()(const ZsC& x) const { return cmp_scalar_vec(x.x, std::get<ZsC>(other).x); }
    int operator()(const ZsS& x) const { return cmp_ext_vec(x.f, std::get<ZsS>(other).f); }
    int operator()(const SeqFun& x) const {
      const auto& y = std::get<SeqFun>(other);
      if (x.chain != y.chain) return x.chain < y.chain ? -1 : 1;
      if (x.affine != y.affine) return x.affine < y.affine ? -1 : 1;
      if (int c = cmp_ext_vec(x.prefix, y.prefix)) return c;
      if (x.affine) {
        if (x.a != y.a) return x.a < y.a ? -1 : 1;
        if (x.b != y.b) return x.b < y.b ? -1 : 1;
        return 0;
      }
      return cmp_ext(x.cv, y.cv);
    }
    int operator()(const TabIdx& x) const {
      const auto& y = std::get<TabIdx>(other);
      if (x.i != y.i) return x.i < y.i ? -1 : 1;
      return 0;
    }
  };
  return std::visit(V{b}, a);
}

void print_payload(std::ostream& os, const Payload& p);

void print_list(std::ostream& os, const std::vector<Element>& v, char open, char close) {
  os << open;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    print_payload(os, v[i].p);
  }
  os << close;
}

void print_payload(std::ostream& os, const Payload& p) {
  struct V {
    std::ostream& os;
    void operator()(const CompactV& x) const { os << "c(" << x.v.str() << ")"; }
    void operator()(const SoftV& x) const { os << "s(" << x.v.str() << ")"; }
    void operator()(const Tuple& x) const { print_list(os, x.parts, '(', ')'); }
    void operator()(const FnTable& x) const { print_list(os, x.at, '[', ']'); }
    void operator()(const StepFn& x) const {
      os << "step{";
      for (std::size_t i = 0; i < x.pieces.size(); ++i) {
        os << x.cuts[i].str() << ":";
        print_payload(os, x.at[i].p);
        os << " (";
        print_payload(os, x.pieces[i].p);
        os << ") ";
      }
      os << x.cuts.back().str() << ":";
      print_payload(os, x.at.back().p);
      os << "}";
    }
    void operator()(const GroupCompact& x) const {
      os << "(g[";
      for (std::size_t i = 0; i < x.g.size(); ++i) os << (i ? "," : "") << x.g[i];
      os << "], " << x.x.str() << ")";
    }
    void operator()(const PairNZ& x) const { os << "(" << x.n << ", " << x.e << ")"; }
    void operator()(const ZsC& x) const {
      os << "v[";
      for (std::size_t i = 0; i < x.x.size(); ++i) os << (i ? "," : "") << x.x[i];
      os << "]";
    }
    void operator()(const ZsS& x) const {
      os << "aff(";
      for (std::size_t i = 0; i < x.f.size(); ++i) os << (i ? ", " : "") << x.f[i].str();
      os << ")";
    }
    void operator()(const SeqFun& x) const {
      if (x.chain) os << "sup";
      os << "seq[";
      for (std::size_t i = 0; i < x.prefix.size(); ++i) os << (i ? "," : "") << x.prefix[i].str();
      if (!x.prefix.empty()) os << ";";
      if (x.affine)
        os << x.a << "*j+" << x.b;
      else
        os << x.cv.str();
      os << "]";
    }
    void operator()(const TabIdx& x) const { os << "#" << x.i; }
  };
  std::visit(V{os}, p);
}

}  // namespace

bool payload_eq(const Payload& a, const Payload& b) { return cmp_payload(a, b) == 0; }
bool payload_less(const Payload& a, const Payload& b) { return cmp_payload(a, b) < 0; }

std::string payload_str(const Payload& p) {
  std::ostringstream os;
  print_payload(os, p);
  return os.str();
}

}  // namespace culab
