#include "ecsea/applier.hpp"

#include "ecsea/distance.hpp"
#include "ecsea/errors.hpp"
#include "ecsea/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ecsea {

LabelSequence Window::labels() const {
  LabelSequence out;
  out.reserve(events.size());
  for (const Event* e : events) out.push_back(e->activity);
  return out;
}

Window get_first_window(const EventPtrs& residual, TimestampMs tau_ms,
                        const std::vector<std::string>& gamma) {
  Window window;
  if (residual.empty()) return window;
  const Event& head = *residual.front();
  const GammaKey head_key = gamma_key(head, gamma);
  for (std::size_t i = 0; i < residual.size(); ++i) {
    const Event& e = *residual[i];
    // The residual is time-ordered, so once an event falls outside tau every
    // later one does too.
    if (e.timestamp_ms - head.timestamp_ms > tau_ms) break;
    if (gamma_key(e, gamma) != head_key) continue;
    window.events.push_back(&e);
    window.positions.push_back(i);
  }
  return window;
}

std::optional<BestMapping> get_best_mapping(const EcseaModel& model,
                                            const Window& window,
                                            double theta) {
  const LabelSequence window_labels = window.labels();
  const std::set<ActivityLabel> label_set(window_labels.begin(),
                                          window_labels.end());

  // Every HL activity reachable from any label in the window.
  std::set<ActivityLabel> candidates;
  for (const ActivityLabel& ll : label_set) {
    auto it = model.llc.find(ll);
    if (it != model.llc.end())
      candidates.insert(it->second.begin(), it->second.end());
  }

  std::optional<BestMapping> best;
  for (const ActivityLabel& hl : candidates) {
    auto hit = model.hlc.find(hl);
    if (hit == model.hlc.end()) continue;
    for (const auto& [psi, count] : hit->second) {
      // Only patterns fully covered by the window's labels may fire.
      const bool covered =
          std::all_of(psi.begin(), psi.end(), [&](const ActivityLabel& l) {
            return label_set.count(l) > 0;
          });
      if (!covered) continue;
      const double denom =
          static_cast<double>(std::max(window_labels.size(), psi.size())) *
          std::sqrt(static_cast<double>(count));
      const double error =
          static_cast<double>(dld(window_labels, psi)) / denom;
      // Ties prefer the longer pattern, then the lexicographically smaller
      // activity; iteration order settles any remaining tie on the smaller
      // pattern.
      const bool replaces =
          !best || error < best->error ||
          (error == best->error &&
           (psi.size() > best->psi.size() ||
            (psi.size() == best->psi.size() && hl < best->hl_activity)));
      if (replaces) best = BestMapping{psi, hl, error};
    }
  }
  if (best && best->error < theta) return best;
  return std::nullopt;
}

std::vector<std::size_t> match_psi(const Window& window,
                                   const LabelSequence& psi) {
  std::vector<bool> taken(window.events.size(), false);
  std::vector<std::size_t> matched;
  for (const ActivityLabel& label : psi)
    for (std::size_t i = 0; i < window.events.size(); ++i)
      if (!taken[i] && window.events[i]->activity == label) {
        taken[i] = true;
        matched.push_back(i);
        break;
      }
  std::sort(matched.begin(), matched.end());
  return matched;
}

Event create_event(const Window& window, const LabelSequence& psi,
                   const ActivityLabel& hl_activity, MergeType phi,
                   const std::vector<std::string>& gamma) {
  const std::vector<std::size_t> matched = match_psi(window, psi);
  if (matched.empty())
    throw ModelError("pattern for \"" + hl_activity +
                     "\" matched no event in the current window");
  std::vector<TimestampMs> ts;
  ts.reserve(matched.size());
  for (std::size_t i : matched) ts.push_back(window.events[i]->timestamp_ms);
  std::sort(ts.begin(), ts.end());

  const Event& head = *window.events.front();
  Event out;
  out.activity = hl_activity;
  out.timestamp_ms = merged_timestamp(ts, phi);
  out.case_id = head.case_id;
  for (const std::string& name : gamma)
    if (const std::string* value = head.attribute(name))
      out.attributes[name] = *value;
  return out;
}

void remove_events(EventPtrs& residual, const Window& window,
                   const LabelSequence& psi) {
  const std::vector<std::size_t> matched = match_psi(window, psi);
  if (matched.empty())
    throw ModelError("pattern matched no event in the current window");
  // positions are ascending because match results and window positions are.
  for (auto it = matched.rbegin(); it != matched.rend(); ++it)
    residual.erase(residual.begin() +
                   static_cast<std::ptrdiff_t>(window.positions[*it]));
}

std::vector<Event> merge_events(std::vector<Event> events,
                                const std::vector<std::string>& gamma,
                                MergeType phi, TimestampMs tau_ms) {
  // Group by activity + grouping attributes; inside a group, runs of events
  // whose consecutive gaps stay below tau fuse into one.
  using GroupKey = std::pair<ActivityLabel, GammaKey>;
  std::map<GroupKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < events.size(); ++i)
    groups[{events[i].activity, gamma_key(events[i], gamma)}].push_back(i);

  std::vector<Event> fused;
  std::vector<std::size_t> creation_order;
  for (auto& [key, indices] : groups) {
    std::sort(indices.begin(), indices.end(),
              [&](std::size_t a, std::size_t b) {
                if (events[a].timestamp_ms != events[b].timestamp_ms)
                  return events[a].timestamp_ms < events[b].timestamp_ms;
                return a < b;
              });
    std::size_t i = 0;
    while (i < indices.size()) {
      std::size_t j = i + 1;
      while (j < indices.size() &&
             events[indices[j]].timestamp_ms -
                     events[indices[j - 1]].timestamp_ms <
                 tau_ms)
        ++j;
      std::vector<TimestampMs> ts;
      std::size_t first_created = indices[i];
      for (std::size_t k = i; k < j; ++k) {
        ts.push_back(events[indices[k]].timestamp_ms);
        first_created = std::min(first_created, indices[k]);
      }
      Event merged = events[indices[i]];
      merged.timestamp_ms = merged_timestamp(ts, phi);
      fused.push_back(std::move(merged));
      creation_order.push_back(first_created);
      i = j;
    }
  }

  std::vector<std::size_t> order(fused.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fused[a].timestamp_ms != fused[b].timestamp_ms)
      return fused[a].timestamp_ms < fused[b].timestamp_ms;
    return creation_order[a] < creation_order[b];
  });
  std::vector<Event> out;
  out.reserve(fused.size());
  for (std::size_t i : order) out.push_back(std::move(fused[i]));
  return out;
}

Trace apply(const EcseaModel& model, const Trace& ll_trace,
            const AbstractionParams& params, ApplyStats* stats) {
  require_attributes(ll_trace, params.gamma);

  EventPtrs residual;
  residual.reserve(ll_trace.events.size());
  for (const Event& e : ll_trace.events) residual.push_back(&e);

  std::vector<Event> created;
  ApplyStats local;
  // When an iteration fails to shrink the residual (no pattern fired), the
  // next one drops the head as a ghost event, so the loop runs at most twice
  // per input event.
  std::size_t last_len = residual.size() + 1;
  while (!residual.empty()) {
    ++local.iterations;
    if (residual.size() == last_len) {
      residual.erase(residual.begin());
      ++local.ghost_events;
      continue;
    }
    last_len = residual.size();
    const Window window = get_first_window(residual, params.tau_ms, params.gamma);
    if (auto best = get_best_mapping(model, window, params.theta)) {
      created.push_back(
          create_event(window, best->psi, best->hl_activity, params.phi,
                       params.gamma));
      remove_events(residual, window, best->psi);
    }
  }

  created = merge_events(std::move(created), params.gamma, params.phi,
                         params.tau_ms);

  Trace out;
  out.case_id = ll_trace.case_id;
  out.events = std::move(created);
  for (std::size_t i = 0; i < out.events.size(); ++i)
    out.events[i].ingest_index = i;
  if (stats) {
    stats->iterations += local.iterations;
    stats->ghost_events += local.ghost_events;
  }
  return out;
}

EventLog apply(const EcseaModel& model, const EventLog& ll_log,
               const AbstractionParams& params, unsigned threads,
               ApplyStats* stats) {
  std::vector<const Trace*> inputs;
  inputs.reserve(ll_log.trace_count());
  for (const auto& [case_id, trace] : ll_log.traces())
    inputs.push_back(&trace);

  std::vector<Trace> outputs(inputs.size());
  std::vector<ApplyStats> per_trace(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    outputs[i] = apply(model, *inputs[i], params, &per_trace[i]);
  });

  EventLog out;
  for (Trace& trace : outputs) {
    const std::string case_id = trace.case_id;
    out.traces().emplace(case_id, std::move(trace));
  }
  if (stats)
    for (const ApplyStats& s : per_trace) {
      stats->iterations += s.iterations;
      stats->ghost_events += s.ghost_events;
    }
  return out;
}

} // namespace ecsea
