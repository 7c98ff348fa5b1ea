// kpgen: keyphrase generation pipeline driver.
//
//   kpgen prepare  --input docs.jsonl --output pairs.jsonl
//   kpgen predict  --input docs.jsonl --output preds.jsonl --backend mock
//   kpgen evaluate --predictions preds.jsonl --gold docs.jsonl --report report.json
//   kpgen demo
//
// Exit status: 0 success, 1 some documents failed, 2 configuration or I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "kpgen/corpus.hpp"
#include "kpgen/evaluator.hpp"
#include "kpgen/http_backend.hpp"
#include "kpgen/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct BackendOptions {
  std::string url;
  int timeout_ms = 30000;
  int retries = 3;
};

struct PrepareArgs {
  std::string input;
  std::string output;
  std::size_t budget = kpgen::kDefaultTokenBudget;
  std::string token_counter = "whitespace";
  BackendOptions backend;
};

struct PredictArgs {
  std::string input;
  std::string output;
  std::string stats;
  std::string backend = "mock";
  BackendOptions http;
  std::string token_counter = "whitespace";
  int n = kpgen::kDefaultMaxKeyphrases;
  int beams = kpgen::kDefaultNumBeams;
  std::size_t budget = kpgen::kDefaultTokenBudget;
  int max_target_tokens = kpgen::kDefaultMaxTargetTokens;
  std::string beam_merge = "all";
  std::string epsilon_mode = "per_occurrence";
  int parallelism = 4;
};

struct EvaluateArgs {
  std::string predictions;
  std::string gold;
  std::string stem = "none";
  std::string precision_denominator = "kept";
  std::string report;
  int parallelism = 1;
};

struct DemoArgs {
  int n = kpgen::kDefaultMaxKeyphrases;
};

// The SemEval abstract used as the running example for this model family.
constexpr const char* kDemoAbstract =
    "In order to monitor a region for traffic traversal, sensors can be deployed to perform "
    "collaborative target detection. Such a sensor network achieves a certain level of "
    "detection performance with an associated cost of deployment. This paper addresses this "
    "problem by proposing path exposure as a measure of the goodness of a deployment and "
    "presents an approach for sequential deployment in steps. It illustrates that the cost of "
    "deployment can be minimized to achieve the desired detection performance by appropriately "
    "choosing the number of sensors deployed in each step.";

void add_backend_options(CLI::App* cmd, BackendOptions& opts) {
  cmd->add_option("--backend-url", opts.url, "Generation server base URL (http://host:port)");
  cmd->add_option("--timeout-ms", opts.timeout_ms, "Per-request timeout in milliseconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--retries", opts.retries, "Retries for failed requests")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}

std::unique_ptr<kpgen::HttpBackend> make_http_backend(const BackendOptions& opts) {
  if (opts.url.empty()) throw kpgen::ConfigError("--backend-url is required for the http backend");
  kpgen::HttpBackendOptions http;
  http.timeout = std::chrono::milliseconds(opts.timeout_ms);
  http.retries = opts.retries;
  return std::make_unique<kpgen::HttpBackend>(opts.url, http);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw kpgen::CorpusError("cannot write " + path, 0);
  return out;
}

void report_issues(const kpgen::LoadedSplit& split, const std::string& path) {
  for (const auto& issue : split.issues) {
    std::cerr << path << ":" << issue.line << ": skipped record: " << issue.message << "\n";
  }
}

int run_prepare(const PrepareArgs& args) {
  if (args.budget < 1) throw kpgen::ConfigError("--budget must be at least 1");
  kpgen::SegmenterConfig seg;
  seg.budget = args.budget;
  std::unique_ptr<kpgen::HttpBackend> backend;
  if (args.token_counter == "backend") {
    backend = make_http_backend(args.backend);
    seg.counter = std::make_shared<kpgen::BackendTokenCounter>(*backend);
  } else if (args.token_counter != "whitespace") {
    throw kpgen::ConfigError("unknown token counter '" + args.token_counter + "'");
  }

  const auto split = kpgen::load_split(args.input);
  report_issues(split, args.input);
  const auto prepared = kpgen::prepare_training_pairs(split.documents, seg);

  auto out = open_output(args.output);
  for (const auto& pair : prepared.pairs) kpgen::write_training_pair(out, pair);
  out.close();
  if (!out) throw kpgen::CorpusError("failed writing " + args.output, 0);

  std::cout << "docs: " << split.documents.size() << "\n"
            << "pairs: " << prepared.pairs.size() << "\n"
            << "skipped_empty_gold: " << prepared.skipped_empty_gold << "\n"
            << "skipped_invalid: " << prepared.skipped_invalid.size() + split.issues.size()
            << "\n";
  return kExitOk;
}

int run_predict(const PredictArgs& args) {
  kpgen::PredictConfig config;
  config.n = args.n;
  config.num_beams = args.beams;
  config.budget = args.budget;
  config.max_target_tokens = args.max_target_tokens;
  config.beam_merge = kpgen::parse_beam_merge(args.beam_merge);
  config.epsilon_mode = kpgen::parse_epsilon_mode(args.epsilon_mode);
  config.parallelism = args.parallelism;
  config.validate();

  std::unique_ptr<kpgen::GenerationBackend> backend;
  if (args.backend == "mock") {
    backend = std::make_unique<kpgen::MockBackend>();
  } else if (args.backend == "http") {
    auto http = make_http_backend(args.http);
    if (!http->healthy()) {
      throw kpgen::ConfigError("backend at " + args.http.url + " failed its health check");
    }
    backend = std::move(http);
  } else {
    throw kpgen::ConfigError("unknown backend '" + args.backend + "'");
  }
  if (args.token_counter == "backend") {
    config.token_counter = std::make_shared<kpgen::BackendTokenCounter>(*backend);
  } else if (args.token_counter != "whitespace") {
    throw kpgen::ConfigError("unknown token counter '" + args.token_counter + "'");
  }

  const auto split = kpgen::load_split(args.input);
  report_issues(split, args.input);
  const auto run = kpgen::predict_corpus(split.documents, *backend, config);

  auto out = open_output(args.output);
  kpgen::write_predictions(out, run.results);
  out.close();
  const auto stats_path = args.stats.empty() ? args.output + ".stats.json" : args.stats;
  auto stats = open_output(stats_path);
  stats << kpgen::stats_to_json(run.stats, config);
  stats.close();
  if (!out || !stats) throw kpgen::CorpusError("failed writing predictions or stats", 0);

  for (const auto& r : run.results) {
    if (r.stats.failed) std::cerr << "failed: " << r.prediction.id << ": " << r.stats.error << "\n";
  }
  std::cout << "docs: " << run.stats.docs_processed << "\n"
            << "failed: " << run.stats.docs_failed << "\n"
            << "paragraphs: " << run.stats.total_paragraphs << "\n"
            << "empty_generations: " << run.stats.empty_generations << "\n";
  return run.stats.docs_failed > 0 ? kExitPartial : kExitOk;
}

int run_evaluate(const EvaluateArgs& args) {
  kpgen::EvalConfig config;
  config.stem = kpgen::parse_stemming(args.stem);
  config.precision_denominator = kpgen::parse_precision_denominator(args.precision_denominator);
  config.parallelism = args.parallelism;

  const auto gold = kpgen::load_split(args.gold);
  report_issues(gold, args.gold);
  const auto predictions = kpgen::load_predictions(args.predictions);
  const auto report = kpgen::evaluate_dataset(predictions, gold.documents, config);

  std::cout << kpgen::format_report_table(report);
  if (!args.report.empty()) {
    auto out = open_output(args.report);
    out << kpgen::report_to_json(report);
    out.close();
    if (!out) throw kpgen::CorpusError("failed writing " + args.report, 0);
  }
  return kExitOk;
}

int run_demo(const DemoArgs& args) {
  const kpgen::Document doc{"demo", "", kDemoAbstract, {}};
  kpgen::PredictConfig config;
  config.n = args.n;
  const kpgen::MockBackend backend;
  const auto result = kpgen::predict_document(doc, backend, config);
  const auto split = kpgen::partition_present_absent(result.prediction.keyphrases,
                                                     kpgen::build_source_text(doc));
  std::cout << "paragraphs: " << result.stats.paragraphs << "\n";
  std::cout << "keyphrases (mock backend, n=" << args.n << "):\n";
  for (std::size_t i = 0; i < result.prediction.keyphrases.size(); ++i) {
    std::cout << "  " << i + 1 << ". " << result.prediction.keyphrases[i] << "\n";
  }
  auto print = [](const char* label, const std::vector<std::string>& phrases) {
    std::cout << label << ":";
    for (std::size_t i = 0; i < phrases.size(); ++i) std::cout << (i ? ", " : " ") << phrases[i];
    std::cout << "\n";
  };
  print("present", split.present);
  print("absent", split.absent);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyphrase generation pipeline: prepare, predict, evaluate"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read flag values from an INI/TOML file");
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "Print the effective configuration and exit")
      ->configurable(false);
  long long seed = 0;
  app.add_option("--seed", seed, "Reserved; every component is deterministic")
      ->capture_default_str();

  PrepareArgs prepare;
  auto* prep = app.add_subcommand("prepare", "Build paragraph-level training pairs");
  prep->add_option("--input", prepare.input, "Documents JSONL")->required();
  prep->add_option("--output", prepare.output, "Training pairs JSONL")->required();
  prep->add_option("--budget", prepare.budget, "Token budget per paragraph")
      ->capture_default_str();
  prep->add_option("--token-counter", prepare.token_counter, "whitespace|backend")
      ->capture_default_str()
      ->check(CLI::IsMember({"whitespace", "backend"}));
  add_backend_options(prep, prepare.backend);

  PredictArgs predict;
  auto* pred = app.add_subcommand("predict", "Predict keyphrases for each document");
  pred->add_option("--input", predict.input, "Documents JSONL")->required();
  pred->add_option("--output", predict.output, "Predictions JSONL")->required();
  pred->add_option("--stats", predict.stats, "Run statistics JSON (default <output>.stats.json)");
  pred->add_option("--backend", predict.backend, "mock|http")
      ->capture_default_str()
      ->check(CLI::IsMember({"mock", "http"}));
  add_backend_options(pred, predict.http);
  pred->add_option("--token-counter", predict.token_counter, "whitespace|backend")
      ->capture_default_str()
      ->check(CLI::IsMember({"whitespace", "backend"}));
  pred->add_option("--n", predict.n, "Keyphrases per document (and per paragraph)")
      ->capture_default_str();
  pred->add_option("--beams", predict.beams, "Beam size")->capture_default_str();
  pred->add_option("--budget", predict.budget, "Token budget per paragraph")
      ->capture_default_str();
  pred->add_option("--max-target-tokens", predict.max_target_tokens,
                   "Generation length limit")
      ->capture_default_str();
  pred->add_option("--beam-merge", predict.beam_merge, "all|top1")
      ->capture_default_str()
      ->check(CLI::IsMember({"all", "top1"}));
  pred->add_option("--epsilon-mode", predict.epsilon_mode, "per_occurrence|per_keyphrase")
      ->capture_default_str()
      ->check(CLI::IsMember({"per_occurrence", "per_keyphrase"}));
  pred->add_option("--parallelism", predict.parallelism, "Documents in flight")
      ->capture_default_str();

  EvaluateArgs evaluate;
  auto* eval = app.add_subcommand("evaluate", "Score predictions against gold keyphrases");
  eval->add_option("--predictions", evaluate.predictions, "Predictions JSONL")->required();
  eval->add_option("--gold", evaluate.gold, "Documents JSONL with gold keyphrases")->required();
  eval->add_option("--stem", evaluate.stem, "none|porter")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "porter"}));
  eval->add_option("--precision-denominator", evaluate.precision_denominator, "kept|k")
      ->capture_default_str()
      ->check(CLI::IsMember({"kept", "k"}));
  eval->add_option("--report", evaluate.report, "Write the JSON report here");
  eval->add_option("--parallelism", evaluate.parallelism, "Evaluation threads")
      ->capture_default_str();

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run the mock backend on a built-in abstract");
  demo_cmd->add_option("--n", demo.n, "Keyphrases to keep")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (dump_config) {
    std::cout << app.config_to_str(true, false);
    return kExitOk;
  }

  try {
    if (*prep) return run_prepare(prepare);
    if (*pred) return run_predict(predict);
    if (*eval) return run_evaluate(evaluate);
    if (*demo_cmd) return run_demo(demo);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
