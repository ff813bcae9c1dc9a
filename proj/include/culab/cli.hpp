#pragma once

#include <map>
#include <string>
#include <vector>

#include "culab/concrete.hpp"

namespace culab {

// A parsed document: named declarations plus a query list. The declaration
// payloads are kept in canonical form so serialize(parse(text)) is stable.
struct Document {
  int version = 1;
  std::uint64_t seed = 0;
  FragParams bounds;

  std::map<std::string, SgPtr> sg;
  std::map<std::string, Element> el;

  // canonical forms of the declaration and query sections, for serialization
  std::string decls_json;
  std::string queries_json;
};

// ParseError carries "line L, column C"; ValidationError names the offender.
Document parse_document(const std::string& text);
std::string serialize(const Document& doc);

struct ReportEntry {
  std::string label;
  std::string value;
  bool ok = true;
};

struct Report {
  std::vector<ReportEntry> entries;
  std::uint64_t seed = 0;

  bool all_ok() const;
  int exit_code() const { return all_ok() ? 0 : 1; }
  std::string plain() const;
  std::string structured() const;
};

// Runs the queries of the document; `command` restricts to one category
// (compare | axioms | construct | functionals | concrete | demo), empty runs
// everything. Queries with an "expect" field count as ok when the outcome
// matches it, so documents can pin known failures.
Report run(const Document& doc, const std::string& command = "");

// Shipped fixture corpus; UnknownFixture for other names.
Document demo_document(const std::string& name);
std::vector<std::string> demo_names();

}  // namespace culab
