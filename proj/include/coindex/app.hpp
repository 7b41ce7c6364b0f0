#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coindex/eval.hpp"
#include "coindex/lexicon.hpp"

namespace coindex {

// Bad configuration or command line; the CLI exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::filesystem::path kb_path;
  std::filesystem::path corpus_dir;
  double tau = 0.2;
  std::optional<int> reference_year;
  ThresholdMode threshold_mode = MinCount{2};
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t refine_passes = 1;
  ExtractionLevel level = ExtractionLevel::Lexical;

  std::filesystem::path out_dir = "out";
  std::optional<std::filesystem::path> gold_path;
  std::optional<std::string> term;
  Averaging averaging = Averaging::Micro;

  void validate() const;
};

// Applies one `key = value` setting. Relative paths are resolved against
// `base_dir`. Throws UsageError for unknown keys or unparsable values.
void apply_setting(Config& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

// `key = value` lines; blank lines and lines starting with '#' are skipped.
Config load_config_file(const std::filesystem::path& path);

// Output locations inside config.out_dir.
struct OutputPaths {
  std::filesystem::path index_store;
  std::filesystem::path blackboard;
  std::filesystem::path vocabulary;
  std::filesystem::path cluster_report;
  std::filesystem::path cluster_graph;
  std::filesystem::path ego_graph(std::string_view term) const;

  explicit OutputPaths(const std::filesystem::path& out_dir);

 private:
  std::filesystem::path dir_;
};

// Runs one of index, cluster, export, eval, pipeline. Data summaries go to
// `out`. Throws Error on domain failures and UsageError on bad input.
void run_command(std::string_view command, const Config& config, std::ostream& out);

}  // namespace coindex
