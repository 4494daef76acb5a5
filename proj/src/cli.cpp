#include "ecsea/cli.hpp"

#include "ecsea/applier.hpp"
#include "ecsea/csv.hpp"
#include "ecsea/errors.hpp"
#include "ecsea/model.hpp"
#include "ecsea/rng.hpp"
#include "ecsea/synthetic.hpp"
#include "ecsea/trainer.hpp"
#include "ecsea/xes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace ecsea {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << bytes;
  out.flush();
  if (!out) throw InputError("writing \"" + path + "\" failed");
}

enum class LogFormat { Xes, Csv };

LogFormat pick_format(const std::string& path, const std::string& override_) {
  if (override_ == "xes") return LogFormat::Xes;
  if (override_ == "csv") return LogFormat::Csv;
  if (!override_.empty())
    throw InputError("unknown log format \"" + override_ +
                     "\" (expected xes or csv)");
  const auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& c : ext)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == "xes") return LogFormat::Xes;
  if (ext == "csv") return LogFormat::Csv;
  throw InputError("cannot tell the log format of \"" + path +
                   "\" from its extension; pass --format xes|csv");
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) next = text.size();
    parts.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

/// "case=C_ID;activity=EVENT_NAME;time=EVENT_TS;attrs=USER_UUID,ITEM_UUID"
CsvColumnMap parse_column_spec(const std::string& spec, char delimiter) {
  CsvColumnMap map;
  map.delimiter = delimiter;
  for (const std::string& part : split_on(spec, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw InputError("column spec entry \"" + part + "\" is not key=value");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "case") {
      map.case_column = value;
    } else if (key == "activity") {
      map.activity_column = value;
    } else if (key == "time") {
      map.time_column = value;
    } else if (key == "attrs") {
      for (const std::string& column : split_on(value, ','))
        if (!column.empty()) map.attribute_columns.push_back(column);
    } else {
      throw InputError("unknown column spec key \"" + key +
                       "\" (expected case, activity, time or attrs)");
    }
  }
  if (map.case_column.empty() || map.activity_column.empty() ||
      map.time_column.empty())
    throw InputError("column spec needs case=, activity= and time= entries");
  return map;
}

EventLog read_log(const std::string& path, const std::string& format,
                  const std::string& column_spec, char delimiter) {
  const std::string bytes = read_file(path);
  try {
    if (pick_format(path, format) == LogFormat::Xes) return parse_xes(bytes);
    CsvColumnMap map;
    if (!column_spec.empty()) {
      map = parse_column_spec(column_spec, delimiter);
    } else {
      const auto eol = bytes.find_first_of("\r\n");
      map = csv_self_column_map(
          eol == std::string::npos ? bytes : bytes.substr(0, eol), delimiter);
    }
    return parse_csv(bytes, map);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_log(const EventLog& log, const std::string& path,
               const std::string& format) {
  if (pick_format(path, format) == LogFormat::Xes)
    write_file(path, write_xes(log));
  else
    write_file(path, write_csv(log));
}

std::vector<MergeType> parse_phis(const std::vector<std::string>& names) {
  std::vector<MergeType> phis;
  for (const std::string& name : names)
    phis.push_back(merge_type_from_string(name));
  return phis;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

char resolve_delimiter(const std::string& text) {
  if (text.size() != 1)
    throw InputError("--delimiter takes exactly one character");
  return text[0];
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned threads = 0; // 0 = all hardware threads
  std::string format;   // empty = infer from file extension
};

struct TrainOpts {
  std::string ll_path, hl_path, out_model, report_path;
  std::string ll_cols, hl_cols, delimiter = ",";
  std::vector<std::string> gamma;
  std::vector<TimestampMs> taus_ms = GridConfig{}.taus_ms;
  std::vector<double> thetas = GridConfig{}.thetas;
  std::vector<std::string> phis = {"MIN", "MAX", "MEAN", "MEDIAN"};
  double split_fraction = 0.8;
  bool no_split = false;
};

int cmd_train(const GlobalOpts& global, const TrainOpts& opts) {
  const char delim = resolve_delimiter(opts.delimiter);
  const EventLog ll_log =
      read_log(opts.ll_path, global.format, opts.ll_cols, delim);
  const EventLog hl_log =
      read_log(opts.hl_path, global.format, opts.hl_cols, delim);

  const PairingResult pairing = pair_logs(ll_log, hl_log);
  if (!pairing.ll_only_cases.empty() || !pairing.hl_only_cases.empty())
    std::cerr << "warning: skipped " << pairing.ll_only_cases.size()
              << " low-level-only and " << pairing.hl_only_cases.size()
              << " high-level-only case(s) that have no partner\n";

  std::vector<TracePair> train_pairs = pairing.pairs;
  std::vector<TracePair> test_pairs;
  if (!opts.no_split) {
    if (pairing.pairs.size() < 2)
      throw InputError(
          "a train/test split needs at least two paired cases; pass "
          "--no-split to train on everything");
    std::tie(train_pairs, test_pairs) =
        split_pairs(pairing.pairs, {opts.split_fraction, global.seed});
  }

  GridConfig config;
  config.taus_ms = opts.taus_ms;
  config.thetas = opts.thetas;
  config.phis = parse_phis(opts.phis);
  config.gamma = opts.gamma;
  config.threads = resolve_threads(global.threads);
  const GridSearchResult result = grid_search(train_pairs, test_pairs, config);

  write_file(opts.out_model, save_model(result.model, result.params));
  if (!opts.report_path.empty())
    write_file(opts.report_path, training_report_json(result));

  std::cout << "trained on " << train_pairs.size() << " pair(s), model written to "
            << opts.out_model << "\n"
            << "winner: tau=" << result.params.tau_ms
            << "ms theta=" << result.params.theta
            << " phi=" << to_string(result.params.phi) << "\n"
            << "train accuracy: " << result.train_accuracy << "\n";
  if (result.test_accuracy)
    std::cout << "test accuracy: " << *result.test_accuracy << "\n";
  std::cout << "ghost low-level events: " << result.stats.ghost_ll_events
            << ", unlearnable high-level events: "
            << result.stats.unlearnable_hl_events << "\n";
  return 0;
}

struct ApplyOpts {
  std::string model_path, ll_path, out_path;
  std::string ll_cols, delimiter = ",";
  // Overrides for the parameters stored in the model file; using them is
  // possible but warned about, since they were tuned together.
  CLI::Option* tau_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* phi_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  TimestampMs tau_ms = 0;
  double theta = 0;
  std::string phi;
  std::vector<std::string> gamma;
};

int cmd_apply(const GlobalOpts& global, const ApplyOpts& opts) {
  auto [model, params] = load_model(read_file(opts.model_path));
  if (opts.tau_opt->count()) {
    std::cerr << "warning: overriding the trained tau with " << opts.tau_ms
              << " ms\n";
    params.tau_ms = opts.tau_ms;
  }
  if (opts.theta_opt->count()) {
    std::cerr << "warning: overriding the trained theta with " << opts.theta
              << "\n";
    params.theta = opts.theta;
  }
  if (opts.phi_opt->count()) {
    std::cerr << "warning: overriding the trained phi with " << opts.phi
              << "\n";
    params.phi = merge_type_from_string(opts.phi);
  }
  if (opts.gamma_opt->count()) {
    std::cerr << "warning: overriding the trained grouping attributes\n";
    params.gamma = opts.gamma;
  }
  params.normalize_and_validate();

  const EventLog ll_log = read_log(opts.ll_path, global.format, opts.ll_cols,
                                   resolve_delimiter(opts.delimiter));
  ApplyStats stats;
  const EventLog hl_log =
      apply(model, ll_log, params, resolve_threads(global.threads), &stats);
  write_log(hl_log, opts.out_path, global.format);

  std::cout << "abstracted " << ll_log.event_count() << " low-level into "
            << hl_log.event_count() << " high-level events across "
            << hl_log.trace_count() << " trace(s) (" << stats.ghost_events
            << " ghost events dropped), written to " << opts.out_path << "\n";
  return 0;
}

struct SynthesizeOpts {
  std::string hl_path, out_ll, out_truth;
  std::string hl_cols, delimiter = ",";
  SynthesisConfig config;
};

int cmd_synthesize(const GlobalOpts& global, SynthesizeOpts opts) {
  const EventLog hl_log = read_log(opts.hl_path, global.format, opts.hl_cols,
                                   resolve_delimiter(opts.delimiter));
  opts.config.seed = global.seed;
  auto [ll_log, truth] = synthesize(hl_log, opts.config);
  write_log(ll_log, opts.out_ll, global.format);
  if (!opts.out_truth.empty())
    write_file(opts.out_truth, ground_truth_json(truth));

  std::cout << "generated " << ll_log.event_count()
            << " low-level events across " << ll_log.trace_count()
            << " trace(s), " << ll_log.activity_set().size()
            << " distinct low-level activities, written to " << opts.out_ll
            << "\n";
  return 0;
}

struct EvaluateOpts {
  std::string hl_path, report_path, csv_path;
  std::string hl_cols, delimiter = ",";
  std::vector<std::size_t> n_values = {2, 4, 6, 8};
  std::size_t runs = 10;
  double train_fraction = 0.1;
  TimestampMs max_jitter_ms = 2000;
  double reorder_prob = 0.1;
  double shared_ll_fraction = 0.2;
  double ghost_rate = 0.1;
  std::vector<std::string> gamma;
  std::vector<TimestampMs> taus_ms = {5000};
  std::vector<double> thetas = {0.6};
  std::vector<std::string> phis = {"MIN", "MAX", "MEAN", "MEDIAN"};
};

int cmd_evaluate(const GlobalOpts& global, const EvaluateOpts& opts) {
  if (opts.runs < 1) throw InputError("--runs must be at least 1");
  if (opts.n_values.empty()) throw InputError("--n-list must not be empty");
  const EventLog hl_log = read_log(opts.hl_path, global.format, opts.hl_cols,
                                   resolve_delimiter(opts.delimiter));

  GridConfig grid;
  grid.taus_ms = opts.taus_ms;
  grid.thetas = opts.thetas;
  grid.phis = parse_phis(opts.phis);
  grid.gamma = opts.gamma;
  grid.threads = resolve_threads(global.threads);

  nlohmann::json configs = nlohmann::json::array();
  std::ostringstream csv;
  csv << "n,run,seed,tau_ms,theta,phi,train_acc,test_acc,train_duration_ms\n";

  for (std::size_t n : opts.n_values) {
    if (n < 1) throw InputError("every entry of --n-list must be at least 1");
    SynthesisConfig synth;
    synth.n_ll_per_hl = n;
    synth.max_jitter_ms = opts.max_jitter_ms;
    synth.reorder_prob = opts.reorder_prob;
    synth.shared_ll_fraction = opts.shared_ll_fraction;
    synth.ghost_rate = opts.ghost_rate;

    nlohmann::json runs = nlohmann::json::array();
    double acc_sum = 0.0, acc_min = 1.0, duration_sum = 0.0;
    for (std::size_t run = 0; run < opts.runs; ++run) {
      const std::uint64_t run_seed =
          hash_combine(hash_combine(global.seed, n), run);
      synth.seed = run_seed;
      auto [ll_log, truth] = synthesize(hl_log, synth);
      const PairingResult pairing = pair_logs(ll_log, hl_log);
      auto [train_pairs, test_pairs] =
          split_pairs(pairing.pairs, {opts.train_fraction, run_seed});

      const auto started = std::chrono::steady_clock::now();
      const GridSearchResult result =
          grid_search(train_pairs, test_pairs, grid);
      const double duration_ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - started)
              .count();

      const double test_acc = result.test_accuracy.value_or(0.0);
      acc_sum += test_acc;
      acc_min = std::min(acc_min, test_acc);
      duration_sum += duration_ms;
      runs.push_back({{"run", run},
                      {"seed", run_seed},
                      {"tau_ms", result.params.tau_ms},
                      {"theta", result.params.theta},
                      {"phi", to_string(result.params.phi)},
                      {"train_acc", result.train_accuracy},
                      {"test_acc", test_acc},
                      {"train_duration_ms", duration_ms}});
      csv << n << ',' << run << ',' << run_seed << ','
          << result.params.tau_ms << ',' << result.params.theta << ','
          << to_string(result.params.phi) << ',' << result.train_accuracy
          << ',' << test_acc << ',' << duration_ms << "\n";
      std::cout << "n=" << n << " run=" << run << ": test accuracy "
                << test_acc << " (training took " << duration_ms << " ms)\n";
    }
    const double count = static_cast<double>(opts.runs);
    configs.push_back({{"n_ll_per_hl", n},
                       {"max_jitter_ms", opts.max_jitter_ms},
                       {"reorder_prob", opts.reorder_prob},
                       {"shared_ll_fraction", opts.shared_ll_fraction},
                       {"ghost_rate", opts.ghost_rate},
                       {"runs", std::move(runs)},
                       {"mean_test_acc", acc_sum / count},
                       {"min_test_acc", acc_min},
                       {"mean_train_duration_ms", duration_sum / count}});
    std::cout << "n=" << n << ": mean test accuracy " << acc_sum / count
              << ", min " << acc_min << ", mean training time "
              << duration_sum / count << " ms\n";
  }

  if (!opts.report_path.empty()) {
    nlohmann::json doc;
    doc["train_fraction"] = opts.train_fraction;
    doc["seed"] = global.seed;
    doc["configs"] = std::move(configs);
    write_file(opts.report_path, doc.dump(2) + "\n");
  }
  if (!opts.csv_path.empty()) write_file(opts.csv_path, csv.str());
  return 0;
}

int cmd_inspect_model(const std::string& model_path) {
  auto [model, params] = load_model(read_file(model_path));
  std::cout << "tau: " << params.tau_ms << " ms\n"
            << "theta: " << params.theta << "\n"
            << "phi: " << to_string(params.phi) << "\n"
            << "gamma:";
  if (params.gamma.empty()) std::cout << " (none)";
  for (const std::string& name : params.gamma) std::cout << " " << name;
  std::cout << "\n\nlow-level activity -> high-level activities:\n";
  for (const auto& [ll, hls] : model.llc) {
    std::cout << "  " << ll << " ->";
    for (const ActivityLabel& hl : hls) std::cout << " " << hl;
    std::cout << "\n";
  }
  std::cout << "\nhigh-level activity patterns:\n";
  for (const auto& [hl, sequences] : model.hlc) {
    std::cout << "  " << hl << ":\n";
    for (const auto& [sequence, count] : sequences) {
      std::cout << "    [seen " << count << "x]";
      for (const ActivityLabel& label : sequence) std::cout << " " << label;
      std::cout << "\n";
    }
  }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Learns and applies event abstraction models that turn "
               "low-level event logs into high-level ones"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Seed for every random choice")
      ->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads (0 = all hardware threads)")
      ->capture_default_str();
  app.add_option("--format", global.format,
                 "Log format: xes or csv (default: by file extension)");

  TrainOpts train_opts;
  CLI::App* train_cmd = app.add_subcommand(
      "train", "Learn a model from a paired low-level/high-level log");
  train_cmd->fallthrough();
  train_cmd->add_option("--ll", train_opts.ll_path, "Low-level log")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--hl", train_opts.hl_path, "High-level log")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out-model", train_opts.out_model,
                        "Where to write the model file")
      ->required();
  train_cmd->add_option("--report", train_opts.report_path,
                        "Write the grid-search report (JSON) here");
  train_cmd->add_option("--gamma", train_opts.gamma,
                        "Attribute names events are grouped by")
      ->delimiter(',');
  train_cmd->add_option("--tau", train_opts.taus_ms,
                        "Candidate time radii in ms")
      ->delimiter(',')
      ->capture_default_str();
  train_cmd->add_option("--theta", train_opts.thetas,
                        "Candidate error thresholds")
      ->delimiter(',')
      ->capture_default_str();
  train_cmd->add_option("--phi", train_opts.phis,
                        "Candidate timestamp merge strategies")
      ->delimiter(',')
      ->capture_default_str();
  train_cmd->add_option("--split", train_opts.split_fraction,
                        "Training fraction of the train/test split")
      ->capture_default_str();
  train_cmd->add_flag("--no-split", train_opts.no_split,
                      "Train on all pairs, skip the held-out test set");
  train_cmd->add_option("--ll-cols", train_opts.ll_cols,
                        "CSV columns of the low-level log, e.g. "
                        "\"case=C_ID;activity=NAME;time=TS;attrs=USER\"");
  train_cmd->add_option("--hl-cols", train_opts.hl_cols,
                        "CSV columns of the high-level log");
  train_cmd->add_option("--delimiter", train_opts.delimiter, "CSV delimiter")
      ->capture_default_str();

  ApplyOpts apply_opts;
  CLI::App* apply_cmd = app.add_subcommand(
      "apply", "Convert a low-level log with a trained model");
  apply_cmd->fallthrough();
  apply_cmd->add_option("--model", apply_opts.model_path, "Model file")
      ->required()
      ->check(CLI::ExistingFile);
  apply_cmd->add_option("--ll", apply_opts.ll_path, "Low-level log")
      ->required()
      ->check(CLI::ExistingFile);
  apply_cmd->add_option("--out", apply_opts.out_path,
                        "Where to write the abstracted log")
      ->required();
  apply_opts.tau_opt = apply_cmd->add_option(
      "--tau", apply_opts.tau_ms, "Override the trained tau (ms)");
  apply_opts.theta_opt = apply_cmd->add_option(
      "--theta", apply_opts.theta, "Override the trained theta");
  apply_opts.phi_opt = apply_cmd->add_option(
      "--phi", apply_opts.phi, "Override the trained phi");
  apply_opts.gamma_opt =
      apply_cmd
          ->add_option("--gamma", apply_opts.gamma,
                       "Override the trained grouping attributes")
          ->delimiter(',');
  apply_cmd->add_option("--ll-cols", apply_opts.ll_cols,
                        "CSV columns of the low-level log");
  apply_cmd->add_option("--delimiter", apply_opts.delimiter, "CSV delimiter")
      ->capture_default_str();

  SynthesizeOpts synth_opts;
  CLI::App* synth_cmd = app.add_subcommand(
      "synthesize",
      "Generate a synthetic low-level log from a high-level log");
  synth_cmd->fallthrough();
  synth_cmd->add_option("--hl", synth_opts.hl_path, "High-level log")
      ->required()
      ->check(CLI::ExistingFile);
  synth_cmd->add_option("--out-ll", synth_opts.out_ll,
                        "Where to write the generated low-level log")
      ->required();
  synth_cmd->add_option("--out-truth", synth_opts.out_truth,
                        "Write the generation ground truth (JSON) here");
  synth_cmd
      ->add_option("--n", synth_opts.config.n_ll_per_hl,
                   "Low-level events per high-level event")
      ->capture_default_str();
  synth_cmd
      ->add_option("--jitter", synth_opts.config.max_jitter_ms,
                   "Max timestamp offset in ms")
      ->capture_default_str();
  synth_cmd
      ->add_option("--reorder", synth_opts.config.reorder_prob,
                   "Adjacent swap probability")
      ->capture_default_str();
  synth_cmd
      ->add_option("--shared", synth_opts.config.shared_ll_fraction,
                   "Fraction of labels drawn from the shared pool")
      ->capture_default_str();
  synth_cmd
      ->add_option("--ghost", synth_opts.config.ghost_rate,
                   "Ghost events per high-level event")
      ->capture_default_str();
  synth_cmd->add_option("--hl-cols", synth_opts.hl_cols,
                        "CSV columns of the high-level log");
  synth_cmd->add_option("--delimiter", synth_opts.delimiter, "CSV delimiter")
      ->capture_default_str();

  EvaluateOpts eval_opts;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate",
      "Synthesize, train and score repeatedly; report accuracy per config");
  eval_cmd->fallthrough();
  eval_cmd->add_option("--hl", eval_opts.hl_path, "High-level log")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--out-report", eval_opts.report_path,
                       "Write the evaluation report (JSON) here");
  eval_cmd->add_option("--out-csv", eval_opts.csv_path,
                       "Write per-run rows (CSV) here");
  eval_cmd
      ->add_option("--n-list", eval_opts.n_values,
                   "Low-level events per high-level event, one run set each")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--runs", eval_opts.runs, "Generated logs per config")
      ->capture_default_str();
  eval_cmd
      ->add_option("--train-fraction", eval_opts.train_fraction,
                   "Fraction of traces used for training")
      ->capture_default_str();
  eval_cmd
      ->add_option("--jitter", eval_opts.max_jitter_ms,
                   "Max timestamp offset in ms")
      ->capture_default_str();
  eval_cmd
      ->add_option("--reorder", eval_opts.reorder_prob,
                   "Adjacent swap probability")
      ->capture_default_str();
  eval_cmd
      ->add_option("--shared", eval_opts.shared_ll_fraction,
                   "Fraction of labels drawn from the shared pool")
      ->capture_default_str();
  eval_cmd
      ->add_option("--ghost", eval_opts.ghost_rate,
                   "Ghost events per high-level event")
      ->capture_default_str();
  eval_cmd
      ->add_option("--gamma", eval_opts.gamma,
                   "Attribute names events are grouped by")
      ->delimiter(',');
  eval_cmd->add_option("--tau", eval_opts.taus_ms, "Candidate time radii in ms")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd
      ->add_option("--theta", eval_opts.thetas, "Candidate error thresholds")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd
      ->add_option("--phi", eval_opts.phis,
                   "Candidate timestamp merge strategies")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--hl-cols", eval_opts.hl_cols,
                       "CSV columns of the high-level log");
  eval_cmd->add_option("--delimiter", eval_opts.delimiter, "CSV delimiter")
      ->capture_default_str();

  std::string inspect_model_path;
  CLI::App* inspect_cmd =
      app.add_subcommand("inspect-model", "Pretty-print a model file");
  inspect_cmd->fallthrough();
  inspect_cmd->add_option("--model", inspect_model_path, "Model file")
      ->required()
      ->check(CLI::ExistingFile);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ecsea");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(train_cmd)) return cmd_train(global, train_opts);
    if (app.got_subcommand(apply_cmd)) return cmd_apply(global, apply_opts);
    if (app.got_subcommand(synth_cmd))
      return cmd_synthesize(global, synth_opts);
    if (app.got_subcommand(eval_cmd)) return cmd_evaluate(global, eval_opts);
    if (app.got_subcommand(inspect_cmd))
      return cmd_inspect_model(inspect_model_path);
    std::cerr << app.help();
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace ecsea
