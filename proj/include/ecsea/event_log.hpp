#ifndef ECSEA_EVENT_LOG_HPP
#define ECSEA_EVENT_LOG_HPP

#include "ecsea/timestamp.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ecsea {

/// Activity names are compared by exact text equality. The low-level and
/// high-level activity universes are kept disjoint at log-pair time.
using ActivityLabel = std::string;

/// A sequence of activity labels, e.g. the body of a trace or a learned
/// low-level pattern.
using LabelSequence = std::vector<ActivityLabel>;

struct Event {
  ActivityLabel activity;
  TimestampMs timestamp_ms = 0;
  std::string case_id;
  std::map<std::string, std::string> attributes;
  /// Position in the source file; breaks timestamp ties reproducibly.
  std::size_t ingest_index = 0;

  /// nullptr when the attribute is absent (absent != empty text).
  const std::string* attribute(const std::string& name) const {
    auto it = attributes.find(name);
    return it == attributes.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Event& a, const Event& b) {
    return a.activity == b.activity && a.timestamp_ms == b.timestamp_ms &&
           a.case_id == b.case_id && a.attributes == b.attributes;
  }
};

/// Events of one case, ordered by timestamp (ties keep source order).
struct Trace {
  std::string case_id;
  std::vector<Event> events;

  LabelSequence activity_sequence() const;
  /// Restores the ordering invariant after events were appended.
  void sort_events();

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.case_id == b.case_id && a.events == b.events;
  }
};

/// Values of one event's grouping attributes, in the order the attribute
/// names were given. Absent attributes keep their slot as nullopt, so absence
/// and empty text group differently.
using GammaKey = std::vector<std::optional<std::string>>;

GammaKey gamma_key(const Event& event, const std::vector<std::string>& gamma);

/// Throws InputError naming the first event that lacks one of the given
/// attributes.
void require_attributes(const Trace& trace,
                        const std::vector<std::string>& names);

class EventLog {
public:
  /// Appends an event to the trace of its case, creating the trace on first
  /// sight. Call finalize() once all events are in.
  void add_event(Event event);
  /// Sorts every trace; must run before the log is consumed.
  void finalize();

  const std::map<std::string, Trace>& traces() const { return traces_; }
  std::map<std::string, Trace>& traces() { return traces_; }
  const Trace* find_trace(const std::string& case_id) const;

  std::size_t trace_count() const { return traces_.size(); }
  std::size_t event_count() const;
  bool empty() const { return traces_.empty(); }
  /// All distinct activity labels occurring in the log.
  std::set<ActivityLabel> activity_set() const;

  friend bool operator==(const EventLog& a, const EventLog& b) {
    return a.traces_ == b.traces_;
  }

private:
  std::map<std::string, Trace> traces_;
};

} // namespace ecsea

#endif // ECSEA_EVENT_LOG_HPP
