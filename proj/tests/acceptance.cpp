// End-to-end acceptance checks for the abstraction pipeline. Each check
// prints one PASS/FAIL line with its key numbers; the binary exits nonzero
// if any check fails. The heavyweight checks reuse one benchmark-scale
// high-level log (42 activities, 1050 traces, ~21k events).

#include "ecsea/applier.hpp"
#include "ecsea/distance.hpp"
#include "ecsea/synthetic.hpp"
#include "ecsea/trainer.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ecsea;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// The moderate pathology mix used by the benchmark-style checks: every
// difficulty knob is on, none dominates.
SynthesisConfig moderate_config(std::size_t n, std::uint64_t seed) {
  return SynthesisConfig{n, 2000, 0.15, 0.2, 0.15, seed};
}

const AbstractionParams kBenchParams{5000, 0.6, MergeType::Min, {"user"}};

const EventLog& benchmark_hl_log() {
  static const EventLog log = generate_hl_log(HlLogSpec{});
  return log;
}

struct Failure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure{message};
}

// --- check 1 ---------------------------------------------------------------
// Training on the demo pair must yield exactly the expected model, and
// applying that model to the raw trace must reproduce the observed
// high-level trace with the stray community.visit event dropped. Sub-second.

std::string check_demo_round_trip() {
  const auto start = Clock::now();
  EventLog ll = test::demo_ll_log();
  EventLog hl = test::demo_hl_log();
  PairingResult pairing = pair_logs(ll, hl);
  const AbstractionParams params = test::demo_params();

  FitStats stats;
  const EcseaModel model = train(pairing.pairs, params, &stats);
  require(model == test::expected_demo_model(),
          "trained model differs from the expected one");
  require(stats.ghost_ll_events == 1, "expected exactly one ghost event");

  ApplyStats apply_stats;
  const Trace predicted =
      apply(model, *ll.find_trace("1337"), params, &apply_stats);
  require(predicted.activity_sequence() == test::demo_hl_sequence(),
          "predicted activity sequence differs from the observed trace");
  require(predicted == *hl.find_trace("1337"),
          "predicted timestamps or attributes differ from the observed trace");
  require(apply_stats.ghost_events == 1,
          "community.visit was not dropped as a ghost");

  const double elapsed = seconds_since(start);
  require(elapsed < 1.0, "round trip exceeded one second");
  std::ostringstream detail;
  detail << "model and trace match exactly, " << std::fixed
         << std::setprecision(3) << elapsed << " s";
  return detail.str();
}

// --- check 2 ---------------------------------------------------------------
// Benchmark-scale accuracy: synthesize low-level logs at fan-outs 2/4/6/8
// with the moderate pathology mix, train on a 10% trace sample, and demand a
// mean test accuracy of at least 0.95 per fan-out over 10 seeds, with no
// rising trend beyond 0.02. Budget: 10 minutes.

std::string check_benchmark_accuracy() {
  const auto start = Clock::now();
  const EventLog& hl = benchmark_hl_log();
  require(hl.activity_set().size() >= 40, "benchmark log has too few activities");
  require(hl.trace_count() >= 1000, "benchmark log has too few traces");
  require(hl.event_count() >= 20000, "benchmark log has too few events");

  GridConfig grid;
  grid.taus_ms = {5000};
  grid.thetas = {0.6};
  grid.gamma = {"user"};

  std::ostringstream detail;
  std::vector<double> means;
  for (std::size_t n : {2, 4, 6, 8}) {
    double sum = 0.0;
    double duration_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      EventLog ll = synthesize(hl, moderate_config(n, seed)).first;
      PairingResult pairing = pair_logs(ll, hl);
      auto [train_pairs, test_pairs] =
          split_pairs(pairing.pairs, {0.1, seed});
      const auto t0 = Clock::now();
      GridSearchResult result = grid_search(train_pairs, test_pairs, grid);
      duration_sum += seconds_since(t0);
      sum += result.test_accuracy.value_or(0.0);
    }
    const double mean = sum / 10.0;
    means.push_back(mean);
    detail << "n=" << n << " mean " << std::setprecision(4) << mean << " ("
           << std::fixed << std::setprecision(2) << duration_sum / 10.0
           << " s/run) ";
    detail.unsetf(std::ios::fixed);
    require(mean >= 0.95, "mean test accuracy below 0.95 at fan-out " +
                              std::to_string(n));
  }
  for (std::size_t i = 0; i + 1 < means.size(); ++i)
    require(means[i + 1] <= means[i] + 0.02,
            "accuracy rose with the fan-out beyond tolerance");
  const double elapsed = seconds_since(start);
  require(elapsed <= 600.0, "benchmark exceeded the 10 minute budget");
  detail << std::fixed << std::setprecision(1) << "total " << elapsed << " s";
  return detail.str();
}

// --- check 3 ---------------------------------------------------------------
// With fan-out 1 and every pathology knob at zero the abstraction is a pure
// relabeling, so accuracy must be exactly 1.0 — not merely close.

std::string check_pathology_free_identity() {
  const EventLog& hl = benchmark_hl_log();
  EventLog ll = synthesize(hl, SynthesisConfig{1, 0, 0.0, 0.0, 0.0, 1}).first;
  PairingResult pairing = pair_logs(ll, hl);
  auto [train_pairs, test_pairs] = split_pairs(pairing.pairs, {0.1, 1});
  const EcseaModel model = train(train_pairs, kBenchParams);
  const double accuracy = evaluate_accuracy(model, test_pairs, kBenchParams);
  require(accuracy == 1.0, "accuracy is " + std::to_string(accuracy) +
                               ", expected exactly 1.0");
  return "accuracy exactly 1.0 on " + std::to_string(test_pairs.size()) +
         " held-out traces";
}

// --- check 4 ---------------------------------------------------------------
// The edit distance must agree with a naive recursive transcription of its
// recurrence on every pair of sequences over a 3-letter alphabet with length
// up to 5 (132,496 ordered pairs; symmetry covers the other half).

std::string check_distance_oracle() {
  std::vector<LabelSequence> all;
  all.push_back({});
  std::size_t block_start = 0;
  for (int len = 1; len <= 5; ++len) {
    const std::size_t block_end = all.size();
    for (std::size_t i = block_start; i < block_end; ++i)
      for (char c : {'a', 'b', 'c'}) {
        LabelSequence next = all[i];
        next.emplace_back(1, c);
        all.push_back(std::move(next));
      }
    block_start = block_end;
  }
  require(all.size() == 364, "sequence enumeration is off");

  std::size_t checked = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      const std::size_t expected = test::dld_oracle(all[i], all[j]);
      require(dld(all[i], all[j]) == expected,
              "mismatch on a sequence pair (forward)");
      require(dld(all[j], all[i]) == expected,
              "mismatch on a sequence pair (reversed)");
      ++checked;
    }
  return std::to_string(checked) + " unordered pairs match the oracle";
}

// --- check 5 ---------------------------------------------------------------
// The greedy loop must halt within twice the trace length and be bitwise
// repeatable, across 1000 random (model, trace, params) instances.

std::string check_termination_determinism() {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    test::RandomInstance inst = test::random_instance(rng);
    ApplyStats stats;
    const Trace once = apply(inst.model, inst.trace, inst.params, &stats);
    const Trace twice = apply(inst.model, inst.trace, inst.params);
    require(stats.iterations <= 2 * inst.trace.events.size(),
            "iteration bound exceeded");
    require(once == twice, "two runs on the same input differ");
  }
  return "1000 random instances halted in bound and repeated identically";
}

// --- check 6 ---------------------------------------------------------------
// Structural invariants: the model stays consistent after every fold step,
// training ignores pair order, output traces are time-sorted, and events
// with unknown labels never change the result.

std::string check_invariant_suite() {
  HlLogSpec spec;
  spec.n_activities = 10;
  spec.n_traces = 30;
  spec.min_trace_len = 5;
  spec.max_trace_len = 10;
  const EventLog hl = generate_hl_log(spec);
  const EventLog ll = synthesize(hl, moderate_config(3, 5)).first;
  const PairingResult pairing = pair_logs(ll, hl);
  require(pairing.pairs.size() >= 20, "corpus too small for the shuffle test");

  // Consistency after every single fit.
  EcseaModel folded;
  for (const TracePair& pair : pairing.pairs) {
    fit(folded, pair, kBenchParams);
    require(folded.consistency_errors().empty(),
            "model inconsistent after a fit step");
  }

  // Permutation invariance over five shuffles.
  const EcseaModel reference = train(pairing.pairs, kBenchParams);
  Rng rng(99);
  for (int round = 0; round < 5; ++round) {
    std::vector<TracePair> shuffled = pairing.pairs;
    shuffle(shuffled, rng);
    require(train(shuffled, kBenchParams) == reference,
            "training result depends on pair order");
  }

  // Sorted output and ghost exclusion on every trace.
  std::size_t injected = 0;
  for (const TracePair& pair : pairing.pairs) {
    const Trace clean = apply(reference, *pair.ll, kBenchParams);
    for (std::size_t i = 1; i < clean.events.size(); ++i)
      require(clean.events[i - 1].timestamp_ms <= clean.events[i].timestamp_ms,
              "output trace is not sorted by timestamp");

    Trace noisy = *pair.ll;
    const TimestampMs lo = noisy.events.front().timestamp_ms - 10000;
    const TimestampMs hi = noisy.events.back().timestamp_ms + 10000;
    const std::size_t k = 1 + rng.below(3);
    for (std::size_t i = 0; i < k; ++i, ++injected) {
      Event ghost;
      ghost.activity = "noise.zz" + std::to_string(1 + rng.below(2));
      ghost.timestamp_ms =
          lo + static_cast<TimestampMs>(rng.below(
                   static_cast<std::uint64_t>(hi - lo) + 1));
      ghost.case_id = noisy.case_id;
      // Mostly reuse a grouping value seen in the trace (the hard case:
      // such a ghost joins real windows); sometimes a foreign one.
      const Event& donor = noisy.events[rng.below(noisy.events.size())];
      ghost.attributes["user"] =
          rng.bernoulli(0.7) ? *donor.attribute("user") : "intruder";
      noisy.events.push_back(std::move(ghost));
    }
    for (std::size_t i = 0; i < noisy.events.size(); ++i)
      noisy.events[i].ingest_index = i;
    noisy.sort_events();
    require(apply(reference, noisy, kBenchParams) == clean,
            "unknown-label events changed the output");
  }
  return "consistency, order independence, sortedness and " +
         std::to_string(injected) + " ghost injections all hold";
}

// --- check 7 ---------------------------------------------------------------
// Reuse across logs: a model trained on low-level logs of one high-level
// log must abstract logs synthesized (with the same label scheme) from a
// different high-level log. Mean accuracy over 5 seeds must reach 0.90.

std::string check_transfer() {
  const EventLog& hl_a = benchmark_hl_log();
  HlLogSpec spec_b;
  spec_b.n_traces = 300;
  spec_b.seed = 77;
  const EventLog hl_b = generate_hl_log(spec_b);

  double sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EventLog ll_a = synthesize(hl_a, moderate_config(4, seed)).first;
    PairingResult pairing_a = pair_logs(ll_a, hl_a);
    auto [train_a, rest_a] = split_pairs(pairing_a.pairs, {0.1, seed});
    const EcseaModel model = train(train_a, kBenchParams);

    EventLog ll_b = synthesize(hl_b, moderate_config(4, seed)).first;
    PairingResult pairing_b = pair_logs(ll_b, hl_b);
    sum += evaluate_accuracy(model, pairing_b.pairs, kBenchParams);
  }
  const double mean = sum / 5.0;
  std::ostringstream detail;
  detail << "mean accuracy " << std::setprecision(4) << mean
         << " on the foreign log";
  require(mean >= 0.90, detail.str());
  return detail.str();
}

} // namespace

int main() {
  struct Check {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Check> checks = {
      {"demo round trip", check_demo_round_trip},
      {"benchmark-scale accuracy", check_benchmark_accuracy},
      {"pathology-free identity", check_pathology_free_identity},
      {"edit-distance oracle", check_distance_oracle},
      {"termination and determinism", check_termination_determinism},
      {"invariant suite", check_invariant_suite},
      {"model transfer", check_transfer},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = Clock::now();
    std::string verdict;
    std::string detail;
    try {
      detail = checks[i].run();
      verdict = "PASS";
    } catch (const Failure& f) {
      detail = f.message;
      verdict = "FAIL";
      ++failures;
    } catch (const std::exception& e) {
      detail = std::string("unexpected error: ") + e.what();
      verdict = "FAIL";
      ++failures;
    }
    std::cout << "[" << verdict << "] " << (i + 1) << "/" << checks.size()
              << " " << checks[i].name << ": " << detail << " ["
              << std::fixed << std::setprecision(1) << seconds_since(start)
              << " s]" << std::endl;
    std::cout.unsetf(std::ios::fixed);
  }
  if (failures) {
    std::cout << failures << " acceptance check(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance checks passed" << std::endl;
  return 0;
}
