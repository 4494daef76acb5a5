#include "ecsea/event_log.hpp"

#include "ecsea/errors.hpp"

#include <algorithm>

namespace ecsea {

LabelSequence Trace::activity_sequence() const {
  LabelSequence seq;
  seq.reserve(events.size());
  for (const Event& e : events) seq.push_back(e.activity);
  return seq;
}

void Trace::sort_events() {
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.timestamp_ms != b.timestamp_ms) return a.timestamp_ms < b.timestamp_ms;
    return a.ingest_index < b.ingest_index;
  });
}

GammaKey gamma_key(const Event& event, const std::vector<std::string>& gamma) {
  GammaKey key;
  key.reserve(gamma.size());
  for (const std::string& name : gamma) {
    const std::string* value = event.attribute(name);
    key.push_back(value ? std::optional<std::string>(*value) : std::nullopt);
  }
  return key;
}

void require_attributes(const Trace& trace,
                        const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < trace.events.size(); ++i)
    for (const std::string& name : names)
      if (!trace.events[i].attribute(name))
        throw InputError("event " + std::to_string(i + 1) + " of case \"" +
                         trace.case_id + "\" (activity \"" +
                         trace.events[i].activity +
                         "\") is missing grouping attribute \"" + name + "\"");
}

void EventLog::add_event(Event event) {
  auto [it, inserted] = traces_.try_emplace(event.case_id);
  if (inserted) it->second.case_id = event.case_id;
  it->second.events.push_back(std::move(event));
}

void EventLog::finalize() {
  for (auto& [id, trace] : traces_) trace.sort_events();
}

const Trace* EventLog::find_trace(const std::string& case_id) const {
  auto it = traces_.find(case_id);
  return it == traces_.end() ? nullptr : &it->second;
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& [id, trace] : traces_) n += trace.events.size();
  return n;
}

std::set<ActivityLabel> EventLog::activity_set() const {
  std::set<ActivityLabel> labels;
  for (const auto& [id, trace] : traces_)
    for (const Event& e : trace.events) labels.insert(e.activity);
  return labels;
}

} // namespace ecsea
