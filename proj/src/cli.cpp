#include "culab/cli.hpp"

#include <json.hpp>
#include <sstream>

#include "culab/axioms.hpp"

namespace culab {

using Json = nlohmann::ordered_json;

namespace {

// --- low-level parsing helpers ---------------------------------------------

[[noreturn]] void parse_fail_at(const std::string& text, std::size_t byte, const std::string& msg) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col << ": " << msg;
  fail(ErrCode::ParseError, os.str());
}

Rat parse_rat(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (!j.is_string()) fail(ErrCode::ParseError, "rationals must be integers or \"p/q\" strings");
  std::string s = j.get<std::string>();
  std::istringstream is(s);
  std::int64_t num = 0, den = 1;
  char slash = 0;
  if (!(is >> num)) fail(ErrCode::ParseError, "bad rational \"" + s + "\"");
  if (is >> slash) {
    if (slash != '/' || !(is >> den)) fail(ErrCode::ParseError, "bad rational \"" + s + "\"");
  }
  if (den == 0) fail(ErrCode::ParseError, "zero denominator in \"" + s + "\"");
  return Rat(num, den);
}

ExtValue parse_ext(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtValue::infinity();
  return ExtValue(parse_rat(j));
}

SgPtr build_semigroup(const std::string& name, const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    fail(ErrCode::ValidationError, name + ": semigroup needs a \"kind\"");
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "nbar") return make_nbar();
  if (kind == "softened") return make_softened(spec.at("m").get<std::int64_t>());
  if (kind == "tau_interval") return make_tau_interval();
  if (kind == "trivial") return make_trivial();
  if (kind == "zero_infinity") return make_zero_infinity();
  if (kind == "zero_one_infinity") return make_zero_one_infinity();
  if (kind == "dimension_drop") return make_dimension_drop();
  if (kind == "glued_three_point") return make_glued_three_point();
  if (kind == "villadsen_gap") return make_villadsen_gap();
  if (kind == "seq_product_nbar") return make_seq_product_nbar();
  if (kind == "lsc_interval") {
    auto target = build_semigroup(name + ".target", spec.at("target"));
    auto V = std::dynamic_pointer_cast<const ValueSemigroup>(target);
    if (!V) fail(ErrCode::ValidationError, name + ": lsc_interval needs a value-semigroup target");
    return make_lsc_interval(V);
  }
  if (kind == "zstable") {
    std::vector<std::vector<Rat>> pairing;
    for (const auto& row : spec.at("pairing")) {
      pairing.emplace_back();
      for (const auto& c : row) pairing.back().push_back(parse_rat(c));
    }
    return make_zstable(spec.at("d").get<std::size_t>(), spec.at("k").get<std::size_t>(),
                        std::move(pairing));
  }
  if (kind == "product") {
    std::vector<SgPtr> fs;
    for (const auto& f : spec.at("factors")) fs.push_back(build_semigroup(name + ".factor", f));
    return make_product(std::move(fs));
  }
  fail(ErrCode::ValidationError, name + ": unknown semigroup kind \"" + kind + "\"");
}

Element build_element(const std::string& name, const Json& spec,
                      const std::map<std::string, SgPtr>& sgs,
                      const std::map<std::string, Element>& els) {
  if (!spec.is_object() || !spec.contains("sg"))
    fail(ErrCode::ValidationError, name + ": element needs an \"sg\" reference");
  auto it = sgs.find(spec.at("sg").get<std::string>());
  if (it == sgs.end())
    fail(ErrCode::ValidationError, name + ": unknown semigroup \"" +
                                       spec.at("sg").get<std::string>() + "\"");
  const SgPtr& S = it->second;
  if (spec.contains("zero")) return S->zero();
  if (spec.contains("compact")) {
    auto V = std::dynamic_pointer_cast<const ValueSemigroup>(S);
    if (!V) fail(ErrCode::ValidationError, name + ": \"compact\" needs a value semigroup");
    return V->compact(parse_rat(spec.at("compact")));
  }
  if (spec.contains("soft")) {
    auto V = std::dynamic_pointer_cast<const ValueSemigroup>(S);
    if (!V) fail(ErrCode::ValidationError, name + ": \"soft\" needs a value semigroup");
    return V->soft(parse_ext(spec.at("soft")));
  }
  if (spec.contains("tuple")) {
    auto P = std::dynamic_pointer_cast<const ProductSg>(S);
    if (!P) fail(ErrCode::ValidationError, name + ": \"tuple\" needs a product");
    std::vector<Element> parts;
    for (const auto& ref : spec.at("tuple")) {
      auto e = els.find(ref.get<std::string>());
      if (e == els.end())
        fail(ErrCode::ValidationError, name + ": unknown element \"" + ref.get<std::string>() + "\"");
      parts.push_back(e->second);
    }
    return P->tuple(std::move(parts));
  }
  if (spec.contains("indicator")) {
    auto L = std::dynamic_pointer_cast<const IntervalLscSg>(S);
    if (!L) fail(ErrCode::ValidationError, name + ": \"indicator\" needs an lsc_interval handle");
    return L->indicator(parse_rat(spec.at("indicator").at(0)), parse_rat(spec.at("indicator").at(1)));
  }
  fail(ErrCode::ValidationError, name + ": unrecognized element form");
}

// --- query execution -------------------------------------------------------

std::string category_of(const std::string& op) {
  if (op == "leq" || op == "way_below" || op == "eq" || op == "is_compact" || op == "add")
    return "compare";
  if (op == "axioms") return "axioms";
  if (op == "limit_scale" || op == "limit_integration" || op == "mixed_laws" ||
      op == "gamma_dyadic" || op == "grothendieck" || op == "seq_scale")
    return "construct";
  if (op == "evaluate" || op == "detect_elementary" || op == "realization") return "functionals";
  if (op == "spectral_dtau" || op == "spectral_leq" || op == "layer_cake" || op == "pl_dtau" ||
      op == "pl_layer_cake")
    return "concrete";
  if (op == "demo") return "demo";
  fail(ErrCode::ValidationError, "unknown query op \"" + op + "\"");
}

const SgPtr& need_sg(const Document& doc, const Json& q) {
  auto it = doc.sg.find(q.at("sg").get<std::string>());
  if (it == doc.sg.end())
    fail(ErrCode::ValidationError, "unknown semigroup \"" + q.at("sg").get<std::string>() + "\"");
  return it->second;
}

const Element& need_el(const Document& doc, const Json& q, const char* key) {
  auto it = doc.el.find(q.at(key).get<std::string>());
  if (it == doc.el.end())
    fail(ErrCode::ValidationError, "unknown element \"" + q.at(key).get<std::string>() + "\"");
  return it->second;
}

void push_bool(Report& rep, const Json& q, const std::string& label, bool result) {
  bool ok = true;
  if (q.contains("expect")) ok = (q.at("expect").get<bool>() == result);
  rep.entries.push_back({label, result ? "true" : "false", ok});
}

SpectralElement parse_spectral(const Json& j) {
  std::vector<Rat> eigs;
  for (const auto& v : j.at("eigenvalues")) eigs.push_back(parse_rat(v));
  return spectral(j.at("dim").get<std::size_t>(), std::move(eigs));
}

PLFunction parse_pl(const Json& j) {
  if (j.contains("tent")) return pl_tent(parse_rat(j.at("tent").at(0)), parse_rat(j.at("tent").at(1)));
  std::vector<Rat> bps, vals;
  for (const auto& v : j.at("breakpoints")) bps.push_back(parse_rat(v));
  for (const auto& v : j.at("values")) vals.push_back(parse_rat(v));
  return pl(std::move(bps), std::move(vals));
}

RationalMeasure parse_measure(const Json& j) {
  RationalMeasure mu;
  if (j.contains("lebesgue")) mu.lebesgue_weight = parse_rat(j.at("lebesgue"));
  if (j.contains("atoms"))
    for (const auto& a : j.at("atoms")) mu.atoms.push_back({parse_rat(a.at(0)), parse_rat(a.at(1))});
  return mu;
}

void run_axioms(Report& rep, const Document& doc, const Json& q) {
  const SgPtr& S = need_sg(doc, q);
  std::vector<Axiom> axs;
  if (q.contains("axioms"))
    for (const auto& a : q.at("axioms")) axs.push_back(axiom_from_name(a.get<std::string>()));
  else
    axs = {Axiom::O1, Axiom::O2, Axiom::O3, Axiom::O4, Axiom::O5, Axiom::O6, Axiom::Riesz};
  Fragment frag = Fragment::enumerated(S, doc.bounds);
  for (Axiom ax : axs) {
    AxiomReport r = check_axiom(*S, ax, frag, doc.bounds);
    std::ostringstream os;
    os << verdict_name(r.verdict);
    if (r.verdict == Verdict::Fail && !r.witness.empty()) {
      auto* T = dynamic_cast<const FiniteTableSg*>(S.get());
      os << " witness (";
      for (std::size_t i = 0; i < r.witness.size(); ++i)
        os << (i ? ", " : "") << (T ? T->name_of(r.witness[i]) : to_string(r.witness[i]));
      os << ")";
    }
    bool ok = r.verdict == Verdict::Pass;
    if (q.contains("expect")) ok = (q.at("expect").get<std::string>() == verdict_name(r.verdict));
    rep.entries.push_back({S->kind() + " " + std::string(axiom_name(ax)), os.str(), ok});
  }
}

void run_mixed_laws(Report& rep, const Document& doc, const Json& q) {
  auto V = std::dynamic_pointer_cast<const ValueSemigroup>(need_sg(doc, q));
  if (!V) fail(ErrCode::ValidationError, "mixed_laws needs a value semigroup");
  std::int64_t vb = doc.bounds.value_bound < 6 ? doc.bounds.value_bound : 6;
  std::int64_t db = doc.bounds.denom_bound;
  bool law1 = true, law2 = true, law3 = true;
  for (std::int64_t n = 0; n <= vb; ++n)
    for (std::int64_t p = 1; p <= vb * db; ++p)
      for (std::int64_t d = 1; d <= db; ++d) {
        Rat x(p, d);
        if (Rat(vb) < x || !V->in_compact_part(Rat(n))) continue;
        Element cn = V->compact(Rat(n)), sx = V->soft(ExtValue(x));
        law1 = law1 && (V->leq(sx, cn) == (x <= Rat(n)));
        law2 = law2 && (V->leq(cn, sx) == (Rat(n) < x));
        law3 = law3 && V->eq(V->add(cn, sx), V->soft(ExtValue(x + Rat(n))));
      }
  push_bool(rep, q, "mixed order laws on " + V->describe(), law1 && law2 && law3);
}

void run_query(Report& rep, const Document& doc, const Json& q);

void run_demo(Report& rep, const Json& q) {
  Document fixture = demo_document(q.at("name").get<std::string>());
  Json queries = Json::parse(fixture.queries_json);
  for (const auto& sub : queries) run_query(rep, fixture, sub);
}

void run_query(Report& rep, const Document& doc, const Json& q) {
  std::string op = q.at("op").get<std::string>();
  if (op == "leq" || op == "way_below" || op == "eq" || op == "is_compact") {
    const Element& a = need_el(doc, q, "a");
    bool r;
    std::string label;
    if (op == "is_compact") {
      r = a.sg->is_compact(a);
      label = op + "(" + q.at("a").get<std::string>() + ")";
    } else {
      const Element& b = need_el(doc, q, "b");
      r = op == "leq"         ? a.sg->leq(a, b)
          : op == "way_below" ? a.sg->way_below(a, b)
                              : a.sg->eq(a, b);
      label = op + "(" + q.at("a").get<std::string>() + ", " + q.at("b").get<std::string>() + ")";
    }
    push_bool(rep, q, label, r);
  } else if (op == "add") {
    const Element& a = need_el(doc, q, "a");
    const Element& b = need_el(doc, q, "b");
    rep.entries.push_back({"add(" + q.at("a").get<std::string>() + ", " +
                               q.at("b").get<std::string>() + ")",
                           to_string(a.sg->add(a, b)), true});
  } else if (op == "axioms") {
    run_axioms(rep, doc, q);
  } else if (op == "limit_scale") {
    std::int64_t m = q.at("m").get<std::int64_t>();
    auto N = make_nbar();
    auto L = stationary_limit(N, MorphismDescriptor::scale_by(N, Rat(m)));
    push_bool(rep, q, "stationary scaling limit", L->describe().find("soft") != std::string::npos);
    rep.entries.push_back({"limit semigroup", L->describe(), true});
  } else if (op == "limit_integration") {
    auto D = make_dimension_drop();
    auto L = stationary_limit(D, MorphismDescriptor::integration(D));
    auto V = std::dynamic_pointer_cast<const ValueSemigroup>(L);
    push_bool(rep, q, "dimension-drop integration limit", V && V->base() == 1 && V->has_dense_soft());
    rep.entries.push_back({"limit semigroup", L->describe(), true});
  } else if (op == "mixed_laws") {
    run_mixed_laws(rep, doc, q);
  } else if (op == "gamma_dyadic") {
    std::int64_t m = q.at("m").get<std::int64_t>();
    auto V = make_softened(m);
    FragParams p;
    p.denom_bound = 8;
    p.value_bound = 4;
    auto G = gamma_completion(w_compact_part(V, p));
    auto W = std::dynamic_pointer_cast<const ValueSemigroup>(G);
    push_bool(rep, q, "gamma completion of the compact part",
              W && W->base() == m && W->has_dense_soft());
    rep.entries.push_back({"completion", G->describe(), true});
  } else if (op == "grothendieck") {
    const SgPtr& S = need_sg(doc, q);
    Fragment frag = Fragment::enumerated(S, doc.bounds);
    GrothendieckResult g = grothendieck_interpolation(frag);
    bool ok = true;
    if (q.contains("expect")) ok = (q.at("expect").get<std::string>() == verdict_name(g.interpolation.verdict));
    rep.entries.push_back({"grothendieck group", g.group.name, true});
    rep.entries.push_back({"interpolation", verdict_name(g.interpolation.verdict), ok});
  } else if (op == "seq_scale") {
    auto S = make_seq_product_nbar();
    std::int64_t n_max = q.contains("n_max") ? q.at("n_max").get<std::int64_t>() : 64;
    Element g = S->affine_desc(1, 0);
    bool never_below = true;
    for (std::int64_t n = 1; n <= n_max; ++n)
      never_below = never_below && !S->leq(g, S->constant_desc(ExtValue(Rat(n))));
    push_bool(rep, q, "unbounded descriptor escapes every n*ones", never_below);
    push_bool(rep, q, "descriptor outside the scale", !S->scale_contains(g));
  } else if (op == "evaluate") {
    auto V = std::dynamic_pointer_cast<const ValueSemigroup>(need_sg(doc, q));
    if (!V) fail(ErrCode::ValidationError, "evaluate needs a value semigroup");
    Functional lam = Functional::scaling(V, parse_ext(q.at("t")));
    const Element& a = need_el(doc, q, "element");
    rep.entries.push_back({"evaluate scaling(" + parse_ext(q.at("t")).str() + ")",
                           evaluate(lam, a).str(), true});
  } else if (op == "detect_elementary") {
    const SgPtr& S = need_sg(doc, q);
    ElementaryReport r = detect_elementary(S, doc.bounds.denom_bound);
    push_bool(rep, q, "elementary sub-Cu-semigroup in " + S->kind(), r.found);
    if (r.found)
      rep.entries.push_back({"witness functional", r.lambda->describe(), true});
  } else if (op == "realization") {
    const SgPtr& S = need_sg(doc, q);
    RankFunction f;
    f.coeff = parse_ext(q.at("t"));
    RankFunction back = rank_of(S, alpha(S, f));
    push_bool(rep, q, "rank(alpha(f)) = f at slope " + f.coeff.str(), back.eq(f));
  } else if (op == "spectral_dtau") {
    rep.entries.push_back({"spectral dtau", spectral_dtau(parse_spectral(q.at("a"))).str(), true});
  } else if (op == "spectral_leq") {
    push_bool(rep, q, "spectral cuntz comparison",
              spectral_cuntz_leq(parse_spectral(q.at("a")), parse_spectral(q.at("b"))));
  } else if (op == "layer_cake") {
    SpectralElement a = parse_spectral(q.at("a"));
    auto N = make_nbar();
    Functional lam =
        Functional::scaling(N, ExtValue(Rat(1, static_cast<std::int64_t>(a.dim))));
    rep.entries.push_back({"layer cake trace", layer_cake_trace(a, lam).str(), true});
  } else if (op == "pl_dtau") {
    rep.entries.push_back(
        {"pl dtau", pl_dtau(parse_pl(q.at("f")), parse_measure(q.at("mu"))).str(), true});
  } else if (op == "pl_layer_cake") {
    PLFunction f = parse_pl(q.at("f"));
    RationalMeasure mu = parse_measure(q.at("mu"));
    Rat lc = pl_layer_cake(f, mu);
    bool riesz = lc == pl_integral(f, mu);
    rep.entries.push_back({"pl layer cake", lc.str(), riesz});
  } else if (op == "demo") {
    run_demo(rep, q);
  } else {
    fail(ErrCode::ValidationError, "unknown query op \"" + op + "\"");
  }
}

}  // namespace

// --- document parsing ------------------------------------------------------

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail_at(text, e.byte, e.what());
  }
  if (!j.is_object()) fail(ErrCode::ValidationError, "document must be an object");
  Document doc;
  if (!j.contains("version") || !j.at("version").is_number_integer() ||
      j.at("version").get<int>() != 1)
    fail(ErrCode::ValidationError, "unsupported document version (need 1)");
  if (j.contains("seed")) doc.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (b.contains("depth")) doc.bounds.depth = b.at("depth").get<int>();
    if (b.contains("denom_bound")) doc.bounds.denom_bound = b.at("denom_bound").get<std::int64_t>();
    if (b.contains("value_bound")) doc.bounds.value_bound = b.at("value_bound").get<std::int64_t>();
    if (b.contains("n_max")) doc.bounds.n_max = b.at("n_max").get<int>();
  }

  Json decls = Json::object();
  decls["semigroups"] = j.contains("semigroups") ? j.at("semigroups") : Json::object();
  decls["elements"] = j.contains("elements") ? j.at("elements") : Json::object();
  for (const auto& [name, spec] : decls["semigroups"].items()) {
    if (doc.sg.count(name)) fail(ErrCode::ValidationError, "duplicate semigroup \"" + name + "\"");
    doc.sg.emplace(name, build_semigroup(name, spec));
  }
  for (const auto& [name, spec] : decls["elements"].items()) {
    if (doc.el.count(name)) fail(ErrCode::ValidationError, "duplicate element \"" + name + "\"");
    doc.el.emplace(name, build_element(name, spec, doc.sg, doc.el));
  }
  doc.decls_json = decls.dump();

  Json queries = j.contains("queries") ? j.at("queries") : Json::array();
  if (!queries.is_array()) fail(ErrCode::ValidationError, "\"queries\" must be an array");
  for (const auto& q : queries) category_of(q.at("op").get<std::string>());  // validates ops
  doc.queries_json = queries.dump();
  return doc;
}

std::string serialize(const Document& doc) {
  Json decls = Json::parse(doc.decls_json);
  Json out = Json::object();
  out["version"] = doc.version;
  out["seed"] = doc.seed;
  out["bounds"] = {{"depth", doc.bounds.depth},
                   {"denom_bound", doc.bounds.denom_bound},
                   {"value_bound", doc.bounds.value_bound},
                   {"n_max", doc.bounds.n_max}};
  out["semigroups"] = decls.at("semigroups");
  out["elements"] = decls.at("elements");
  out["queries"] = Json::parse(doc.queries_json);
  return out.dump(2) + "\n";
}

// --- reports ---------------------------------------------------------------

bool Report::all_ok() const {
  for (const auto& e : entries)
    if (!e.ok) return false;
  return true;
}

std::string Report::plain() const {
  std::ostringstream os;
  for (const auto& e : entries)
    os << (e.ok ? "  ok  " : " FAIL ") << e.label << ": " << e.value << "\n";
  os << (all_ok() ? "all queries ok" : "some queries failed") << " (seed " << seed << ")\n";
  return os.str();
}

std::string Report::structured() const {
  Json out = Json::object();
  out["seed"] = seed;
  out["ok"] = all_ok();
  out["entries"] = Json::array();
  for (const auto& e : entries)
    out["entries"].push_back({{"label", e.label}, {"value", e.value}, {"ok", e.ok}});
  return out.dump(2) + "\n";
}

Report run(const Document& doc, const std::string& command) {
  Report rep;
  rep.seed = doc.seed;
  Json queries = Json::parse(doc.queries_json);
  for (const auto& q : queries) {
    std::string cat = category_of(q.at("op").get<std::string>());
    if (!command.empty() && command != cat) continue;
    run_query(rep, doc, q);
  }
  return rep;
}

// --- fixture corpus --------------------------------------------------------

namespace {

const std::pair<const char*, const char*> kFixtures[] = {
    {"cu-of-Z", R"({
      "version": 1,
      "semigroups": {"Z": {"kind": "softened", "m": 1}},
      "queries": [
        {"op": "limit_integration", "expect": true},
        {"op": "mixed_laws", "sg": "Z", "expect": true}
      ]
    })"},
    {"car-algebra", R"({
      "version": 1,
      "semigroups": {"car": {"kind": "softened", "m": 2}},
      "elements": {
        "s_half": {"sg": "car", "soft": "1/2"},
        "c_half": {"sg": "car", "compact": "1/2"}
      },
      "queries": [
        {"op": "leq", "a": "s_half", "b": "c_half", "expect": true},
        {"op": "leq", "a": "c_half", "b": "s_half", "expect": false},
        {"op": "gamma_dyadic", "m": 2, "expect": true}
      ]
    })"},
    {"toeplitz-wc", R"({
      "version": 1,
      "semigroups": {"T": {"kind": "zero_infinity"}},
      "queries": [
        {"op": "axioms", "sg": "T", "axioms": ["WC"], "expect": "fail"}
      ]
    })"},
    {"sphere-o6plus", R"({
      "version": 1,
      "semigroups": {"S2": {"kind": "glued_three_point"}},
      "queries": [
        {"op": "axioms", "sg": "S2", "axioms": ["O6plus"], "expect": "fail"}
      ]
    })"},
    {"ellinfty-product", R"({
      "version": 1,
      "semigroups": {"P": {"kind": "product", "factors": [{"kind": "nbar"}, {"kind": "nbar"}]}},
      "queries": [
        {"op": "seq_scale", "n_max": 64, "expect": true},
        {"op": "detect_elementary", "sg": "P", "expect": true}
      ]
    })"},
};

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> out;
  for (const auto& [n, _] : kFixtures) out.push_back(n);
  return out;
}

Document demo_document(const std::string& name) {
  for (const auto& [n, text] : kFixtures)
    if (name == n) return parse_document(text);
  fail(ErrCode::UnknownFixture, "no fixture named \"" + name + "\"");
}

}  // namespace culab
