// coindex: index a corpus with the agent pipeline, co-cluster terms and
// documents, export Pajek graphs and score the index against a gold file.
//
//   coindex <index|cluster|export|eval|pipeline> [--config FILE] [--key value ...]
//
// Flags are named after the config keys and override values from the file.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coindex/app.hpp"
#include "coindex/error.hpp"

namespace {

struct Flag {
  const char* key;
  const char* help;
};

constexpr Flag kFlags[] = {
    {"kb_path", "knowledge base JSON file"},
    {"corpus_dir", "directory of *.txt documents"},
    {"tau", "thematic similarity threshold in [0,1]"},
    {"reference_year", "year documents are aged against"},
    {"threshold_mode", "vocabulary threshold: mincount:<c> or topn:<n>"},
    {"k", "number of co-clusters"},
    {"seed", "k-means seed"},
    {"refine_passes", "W/D duality refinement passes"},
    {"level", "grapheme, lexical, syntactic or semantic"},
    {"out_dir", "directory for index store, blackboard, reports and graphs"},
    {"gold_path", "gold standard TSV for eval"},
    {"term", "center term for an ego network export"},
    {"averaging", "micro or macro precision/recall"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based indexing and bipartite spectral co-clustering"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  std::vector<std::optional<std::string>> values(std::size(kFlags));
  for (std::size_t i = 0; i < std::size(kFlags); ++i) {
    app.add_option(std::string("--") + kFlags[i].key, values[i], kFlags[i].help);
  }

  for (const char* name : {"index", "cluster", "export", "eval", "pipeline"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    coindex::Config config;
    if (!config_path.empty()) config = coindex::load_config_file(config_path);
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      if (values[i]) coindex::apply_setting(config, kFlags[i].key, *values[i]);
    }
    coindex::run_command(command, config, std::cout);
  } catch (const coindex::UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const coindex::Error& e) {
    std::cerr << e.module() << ": " << coindex::to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "cli: IoError: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
