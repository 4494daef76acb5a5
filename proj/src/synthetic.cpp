#include "ecsea/synthetic.hpp"

#include "ecsea/errors.hpp"
#include "ecsea/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace ecsea {

namespace {

void validate(const SynthesisConfig& config) {
  if (config.n_ll_per_hl < 1)
    throw InputError("n_ll_per_hl must be at least 1");
  if (config.max_jitter_ms < 0) throw InputError("max_jitter_ms must be >= 0");
  for (auto [name, p] :
       {std::pair<const char*, double>{"reorder_prob", config.reorder_prob},
        {"shared_ll_fraction", config.shared_ll_fraction},
        {"ghost_rate", config.ghost_rate}})
    if (!(p >= 0.0 && p <= 1.0))
      throw InputError(std::string(name) + " must lie in [0, 1]");
}

std::string zero_pad(std::size_t value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

} // namespace

std::string ground_truth_json(const GroundTruth& truth) {
  nlohmann::json doc;
  nlohmann::json sequences = nlohmann::json::object();
  for (const auto& [activity, seqs] : truth.activity_sequences)
    sequences[activity] = seqs;
  doc["activity_sequences"] = std::move(sequences);
  nlohmann::json origins = nlohmann::json::object();
  for (const auto& [id, origin] : truth.origins) origins[id] = origin;
  doc["origins"] = std::move(origins);
  return doc.dump(2) + "\n";
}

std::pair<EventLog, GroundTruth> synthesize(const EventLog& hl_log,
                                            const SynthesisConfig& config) {
  validate(config);

  // The label set each high-level activity expands to is fixed per (seed,
  // activity) so every occurrence, in any trace of any log generated with
  // this seed, produces the same pattern.
  const std::size_t pool = config.n_ll_per_hl;
  std::map<ActivityLabel, LabelSequence> templates;
  for (const ActivityLabel& activity : hl_log.activity_set()) {
    Rng rng(hash_str(hash_combine(config.seed, 1), activity));
    LabelSequence labels;
    for (std::size_t k = 0; k < config.n_ll_per_hl; ++k) {
      if (rng.bernoulli(config.shared_ll_fraction))
        labels.push_back("shared.ll" + std::to_string(rng.below(pool) + 1));
      else
        labels.push_back(activity + ".ll" + std::to_string(k + 1));
    }
    templates[activity] = std::move(labels);
  }

  // Ghost timestamps spread further than real jitter so that with a
  // reasonable tau some ghosts fall near their neighbors and get learned as
  // noise while others land out of reach of every high-level event.
  const TimestampMs ghost_spread =
      3 * std::max<TimestampMs>(config.max_jitter_ms, 1000);

  EventLog ll_log;
  GroundTruth truth;
  for (const auto& [activity, labels] : templates)
    truth.activity_sequences[activity] = {labels};

  for (const auto& [case_id, trace] : hl_log.traces()) {
    Rng rng(hash_str(hash_combine(config.seed, 2), case_id));
    struct Pending {
      Event event;
      std::string origin;
      std::size_t generated_at;
    };
    std::vector<Pending> pending;

    for (std::size_t h = 0; h < trace.events.size(); ++h) {
      const Event& hl = trace.events[h];
      const std::string origin = case_id + "#hl" + std::to_string(h);
      const LabelSequence& labels = templates[hl.activity];
      // Offsets are sorted so the events of one high-level event keep their
      // template order; order noise is reorder_prob's job, not the jitter's.
      std::vector<TimestampMs> offsets(labels.size(), 0);
      if (config.max_jitter_ms > 0) {
        for (TimestampMs& offset : offsets)
          offset = static_cast<TimestampMs>(rng.below(
              static_cast<std::uint64_t>(config.max_jitter_ms) + 1));
        std::sort(offsets.begin(), offsets.end());
      }
      for (std::size_t k = 0; k < labels.size(); ++k) {
        Event e;
        e.activity = labels[k];
        e.timestamp_ms = hl.timestamp_ms + offsets[k];
        e.case_id = case_id;
        e.attributes = hl.attributes;
        pending.push_back({std::move(e), origin, pending.size()});
      }
      if (config.ghost_rate > 0 && rng.bernoulli(config.ghost_rate)) {
        Event e;
        e.activity = "ghost.ll" + std::to_string(rng.below(pool) + 1);
        e.timestamp_ms = hl.timestamp_ms +
                         static_cast<TimestampMs>(rng.below(
                             static_cast<std::uint64_t>(ghost_spread) + 1));
        e.case_id = case_id;
        e.attributes = hl.attributes;
        pending.push_back({std::move(e), "ghost", pending.size()});
      }
    }

    std::sort(pending.begin(), pending.end(),
              [](const Pending& a, const Pending& b) {
                if (a.event.timestamp_ms != b.event.timestamp_ms)
                  return a.event.timestamp_ms < b.event.timestamp_ms;
                return a.generated_at < b.generated_at;
              });
    // Order noise: swapping the timestamps of an adjacent pair inverts their
    // observed order while keeping the timestamp multiset intact. Only pairs
    // that are close in time are eligible — order scrambling comes from
    // batched writes of near-simultaneous events, it does not teleport an
    // event across half a minute.
    const TimestampMs swap_reach =
        std::max<TimestampMs>(config.max_jitter_ms, 1000);
    for (std::size_t i = 0; i + 1 < pending.size(); ++i)
      if (config.reorder_prob > 0 &&
          pending[i + 1].event.timestamp_ms - pending[i].event.timestamp_ms <=
              swap_reach &&
          rng.bernoulli(config.reorder_prob))
        std::swap(pending[i].event.timestamp_ms,
                  pending[i + 1].event.timestamp_ms);

    for (std::size_t i = 0; i < pending.size(); ++i) {
      Pending& p = pending[i];
      const std::string synth_id =
          case_id + "#ll" + std::to_string(p.generated_at);
      p.event.attributes["synth:id"] = synth_id;
      p.event.ingest_index = i;
      truth.origins[synth_id] = p.origin;
      ll_log.add_event(std::move(p.event));
    }
  }
  ll_log.finalize();
  return {std::move(ll_log), std::move(truth)};
}

EventLog sample_traces(const EventLog& log, double fraction,
                       std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw InputError("sample fraction must lie in (0, 1]");
  std::vector<std::string> case_ids;
  case_ids.reserve(log.trace_count());
  for (const auto& [case_id, trace] : log.traces())
    case_ids.push_back(case_id);
  Rng rng(seed);
  shuffle(case_ids, rng);

  const std::size_t keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(
             fraction * static_cast<double>(case_ids.size()))));
  EventLog out;
  for (std::size_t i = 0; i < keep && i < case_ids.size(); ++i)
    out.traces().emplace(case_ids[i], *log.find_trace(case_ids[i]));
  return out;
}

EventLog generate_hl_log(const HlLogSpec& spec) {
  if (spec.n_activities < 1 || spec.n_traces < 1)
    throw InputError("the log needs at least one activity and one trace");
  if (spec.min_trace_len < 1 || spec.max_trace_len < spec.min_trace_len)
    throw InputError("invalid trace length bounds");
  if (spec.min_gap_ms < 1 || spec.max_gap_ms < spec.min_gap_ms)
    throw InputError("invalid gap bounds");

  std::vector<ActivityLabel> activities;
  for (std::size_t a = 0; a < spec.n_activities; ++a)
    activities.push_back("hl.activity." + zero_pad(a + 1, 3));

  const TimestampMs base = 1609459200000; // 2021-01-01T00:00:00Z
  EventLog log;
  for (std::size_t t = 0; t < spec.n_traces; ++t) {
    const std::string case_id = "case" + zero_pad(t + 1, 5);
    Rng rng(hash_str(spec.seed, case_id));
    const std::size_t len =
        spec.min_trace_len +
        rng.below(spec.max_trace_len - spec.min_trace_len + 1);
    // Spread trace starts over roughly a year.
    TimestampMs ts = base + static_cast<TimestampMs>(
                                rng.below(365ULL * 24 * 3600 * 1000));
    for (std::size_t i = 0; i < len; ++i) {
      Event e;
      e.activity = activities[rng.below(activities.size())];
      e.timestamp_ms = ts;
      e.case_id = case_id;
      e.attributes[spec.group_attribute] =
          "user" + zero_pad(rng.below(spec.n_users) + 1, 2);
      e.ingest_index = i;
      log.add_event(std::move(e));
      ts += static_cast<TimestampMs>(
          static_cast<std::uint64_t>(spec.min_gap_ms) +
          rng.below(static_cast<std::uint64_t>(spec.max_gap_ms -
                                               spec.min_gap_ms) +
                    1));
    }
  }
  log.finalize();
  return log;
}

} // namespace ecsea
