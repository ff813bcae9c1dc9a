#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "culab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cu-lab: exact computations in abstract Cuntz semigroups"};
  app.require_subcommand(1);

  std::string file, command, format = "plain";
  std::uint64_t seed = 0;
  std::int64_t bound = 0;
  bool seed_set = false, bound_set = false;

  CLI::App* run_cmd = app.add_subcommand("run", "run the queries of a document");
  run_cmd->add_option("file", file, "document path, or - for stdin")->required();
  run_cmd->add_option("--command", command,
                      "restrict to one category: compare|axioms|construct|functionals|concrete|demo");
  run_cmd->add_option("--seed", seed, "override the document seed")->each([&](const std::string&) {
    seed_set = true;
  });
  run_cmd->add_option("--bound", bound, "override the denominator bound")
      ->each([&](const std::string&) { bound_set = true; });
  run_cmd->add_option("--format", format, "plain|structured")
      ->check(CLI::IsMember({"plain", "structured"}));

  CLI::App* demos = app.add_subcommand("demos", "list the shipped fixtures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (demos->parsed()) {
      for (const auto& n : culab::demo_names()) std::cout << n << "\n";
      return 0;
    }
    std::string text;
    if (file == "-") {
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      text = buf.str();
    } else {
      std::ifstream in(file);
      if (!in) {
        std::cerr << "error: cannot open " << file << "\n";
        return 2;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    culab::Document doc = culab::parse_document(text);
    if (seed_set) doc.seed = seed;
    if (bound_set) doc.bounds.denom_bound = bound;
    culab::Report rep = culab::run(doc, command);
    std::cout << (format == "structured" ? rep.structured() : rep.plain());
    return rep.exit_code();
  } catch (const culab::CuError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
