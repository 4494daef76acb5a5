#ifndef ECSEA_SYNTHETIC_HPP
#define ECSEA_SYNTHETIC_HPP

#include "ecsea/event_log.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ecsea {

/// Knobs for expanding a high-level log into a synthetic low-level log. Each
/// knob controls one difficulty dimension: event fan-out, timestamp spread,
/// order noise, label sharing across activities, and unrelated ghost events.
struct SynthesisConfig {
  std::size_t n_ll_per_hl = 2;
  TimestampMs max_jitter_ms = 0;
  double reorder_prob = 0.0;
  double shared_ll_fraction = 0.0;
  double ghost_rate = 0.0;
  std::uint64_t seed = 0;
};

/// What the generator actually did, for oracle checks: the label sequence
/// each high-level activity expands to, and for every generated low-level
/// event (keyed by its synth:id attribute) the high-level event it belongs
/// to ("<case>#hl<index>") or "ghost".
struct GroundTruth {
  std::map<ActivityLabel, std::vector<LabelSequence>> activity_sequences;
  std::map<std::string, std::string> origins;
};

std::string ground_truth_json(const GroundTruth& truth);

/// Expands every high-level event into low-level events per the config.
/// Deterministic given (hl_log, config); the low-level and high-level label
/// spaces stay disjoint.
std::pair<EventLog, GroundTruth> synthesize(const EventLog& hl_log,
                                            const SynthesisConfig& config);

/// Keeps a deterministic random subset of floor(fraction * traces) traces
/// (at least one).
EventLog sample_traces(const EventLog& log, double fraction,
                       std::uint64_t seed);

/// Shape of a generated high-level demo/benchmark log.
struct HlLogSpec {
  std::size_t n_activities = 42;
  std::size_t n_traces = 1050;
  std::size_t min_trace_len = 15;
  std::size_t max_trace_len = 25;
  std::size_t n_users = 12;
  /// Bounds for the gap between consecutive events of a trace.
  TimestampMs min_gap_ms = 8000;
  TimestampMs max_gap_ms = 30000;
  std::string group_attribute = "user";
  std::uint64_t seed = 1;
};

/// Deterministic random high-level log: every event carries the grouping
/// attribute, timestamps are strictly increasing within a trace.
EventLog generate_hl_log(const HlLogSpec& spec);

} // namespace ecsea

#endif // ECSEA_SYNTHETIC_HPP
