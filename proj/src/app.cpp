#include "coindex/app.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "coindex/agents.hpp"
#include "coindex/cocluster.hpp"
#include "coindex/corpus.hpp"
#include "coindex/error.hpp"
#include "coindex/graphviz.hpp"
#include "coindex/index_store.hpp"
#include "coindex/kb.hpp"

namespace coindex {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw UsageError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  }
  return v;
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

std::vector<IndexedDocument> load_documents(const OutputPaths& paths) {
  return parse_index_store(read_file(paths.index_store, "cli"));
}

TermDocMatrix matrix_from_store(const Config& config, const OutputPaths& paths, bool write_vocab) {
  const auto docs = load_documents(paths);
  const Vocabulary vocab = build_vocabulary(docs, config.threshold_mode);
  if (write_vocab) write_file(paths.vocabulary, vocabulary_tsv(vocab), "lexicon");
  return build_matrix(vocab, docs);
}

void cmd_index(const Config& config, const OutputPaths& paths, std::ostream& out) {
  if (config.kb_path.empty()) throw UsageError("kb_path is required");
  if (config.corpus_dir.empty()) throw UsageError("corpus_dir is required");
  if (!config.reference_year) throw UsageError("reference_year is required");

  const KnowledgeBase kb = KnowledgeBase::load(config.kb_path);
  const auto files = list_corpus_dir(config.corpus_dir);
  const Corpus corpus = ingest(files);

  std::filesystem::create_directories(config.out_dir);
  PipelineConfig pc;
  pc.tau = config.tau;
  pc.reference_year = *config.reference_year;
  pc.level = config.level;
  pc.blackboard_path = paths.blackboard;
  const PipelineResult result = run_pipeline(kb, corpus, pc);
  write_file(paths.index_store,
             index_store_json(result.documents, result.index, *config.reference_year), "cli");

  std::size_t counts[3] = {0, 0, 0};
  for (const auto& d : result.documents) ++counts[static_cast<int>(d.routing)];
  out << "documents\t" << result.documents.size() << "\n"
      << "Index\t" << counts[0] << "\n"
      << "StoreOnly\t" << counts[1] << "\n"
      << "Discard\t" << counts[2] << "\n";
}

void cmd_cluster(const Config& config, const OutputPaths& paths, std::ostream& out) {
  const TermDocMatrix m = matrix_from_store(config, paths, true);
  CoclusterOptions options;
  options.refine_passes = config.refine_passes;
  const CoClustering c = cocluster(m, config.k, config.seed, options);
  write_file(paths.cluster_report, cluster_report_json(m, c), "cocluster");
  out << "terms\t" << m.rows() << "\n"
      << "documents\t" << m.cols() << "\n"
      << "clusters\t" << c.k << "\n";
}

void cmd_export(const Config& config, const OutputPaths& paths, std::ostream& out) {
  const TermDocMatrix m = matrix_from_store(config, paths, false);
  if (config.term) {
    const auto path = paths.ego_graph(*config.term);
    export_pajek(ego_network(m, *config.term), path);
    out << "wrote\t" << path.string() << "\n";
    return;
  }
  const CoClustering c = parse_cluster_report(read_file(paths.cluster_report, "cli"), m);
  export_pajek(cluster_graph(m, c), paths.cluster_graph);
  out << "wrote\t" << paths.cluster_graph.string() << "\n";
}

void cmd_eval(const Config& config, const OutputPaths& paths, std::ostream& out) {
  if (!config.gold_path) throw UsageError("gold_path is required for eval");
  const auto docs = load_documents(paths);
  const GoldStandard gold = load_gold(*config.gold_path);
  const PrecisionRecall pr = precision_recall(produced_terms(docs), gold, config.averaging);
  out.precision(17);
  out << "precision\t" << pr.precision << "\n"
      << "recall\t" << pr.recall << "\n";
}

}  // namespace

void Config::validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) throw UsageError("tau must lie in [0, 1]");
  if (k < 1) throw UsageError("k must be at least 1");
  if (level == ExtractionLevel::Pragmatic) {
    throw UsageError("level 'pragmatic' is declared but not implemented");
  }
}

void apply_setting(Config& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir) {
  if (key == "kb_path") {
    config.kb_path = resolve(base_dir, value);
  } else if (key == "corpus_dir") {
    config.corpus_dir = resolve(base_dir, value);
  } else if (key == "out_dir") {
    config.out_dir = resolve(base_dir, value);
  } else if (key == "gold_path") {
    config.gold_path = resolve(base_dir, value);
  } else if (key == "tau") {
    double tau = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), tau);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
      throw UsageError("tau: expected a number, got '" + std::string(value) + "'");
    }
    config.tau = tau;
  } else if (key == "reference_year") {
    config.reference_year = parse_integer<int>(key, value);
  } else if (key == "threshold_mode") {
    try {
      config.threshold_mode = parse_threshold_mode(value);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  } else if (key == "k") {
    config.k = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    config.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "refine_passes") {
    config.refine_passes = parse_integer<std::size_t>(key, value);
  } else if (key == "level") {
    auto level = parse_extraction_level(value);
    if (!level) throw UsageError("level: unknown extraction level '" + std::string(value) + "'");
    config.level = *level;
  } else if (key == "term") {
    config.term = std::string(value);
  } else if (key == "averaging") {
    if (value == "micro") {
      config.averaging = Averaging::Micro;
    } else if (value == "macro") {
      config.averaging = Averaging::Macro;
    } else {
      throw UsageError("averaging must be micro or macro");
    }
  } else {
    throw UsageError("unknown config key '" + std::string(key) + "'");
  }
}

Config load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  Config config;
  const auto base = path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), base);
  }
  return config;
}

OutputPaths::OutputPaths(const std::filesystem::path& out_dir)
    : index_store(out_dir / "index.json"),
      blackboard(out_dir / "blackboard.xml"),
      vocabulary(out_dir / "vocabulary.tsv"),
      cluster_report(out_dir / "clusters.json"),
      cluster_graph(out_dir / "clusters.net"),
      dir_(out_dir) {}

std::filesystem::path OutputPaths::ego_graph(std::string_view term) const {
  return dir_ / ("ego_" + std::string(term) + ".net");
}

void run_command(std::string_view command, const Config& config, std::ostream& out) {
  config.validate();
  const OutputPaths paths(config.out_dir);
  if (command == "index") {
    cmd_index(config, paths, out);
  } else if (command == "cluster") {
    cmd_cluster(config, paths, out);
  } else if (command == "export") {
    cmd_export(config, paths, out);
  } else if (command == "eval") {
    cmd_eval(config, paths, out);
  } else if (command == "pipeline") {
    cmd_index(config, paths, out);
    cmd_cluster(config, paths, out);
    Config graph_config = config;
    graph_config.term.reset();
    cmd_export(graph_config, paths, out);
    if (config.term) cmd_export(config, paths, out);
    if (config.gold_path) cmd_eval(config, paths, out);
  } else {
    throw UsageError("unknown command '" + std::string(command) + "'");
  }
}

}  // namespace coindex
