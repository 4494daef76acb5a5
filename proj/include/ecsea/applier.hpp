#ifndef ECSEA_APPLIER_HPP
#define ECSEA_APPLIER_HPP

#include "ecsea/event_log.hpp"
#include "ecsea/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ecsea {

using EventPtrs = std::vector<const Event*>;

/// The head-anchored group of low-level events a single abstraction step looks
/// at: every event agrees with the head on all grouping attributes and lies
/// within tau of it. Events of other groups that are interleaved in time are
/// skipped, not consumed.
struct Window {
  EventPtrs events;
  /// Index of each window event in the residual sequence the window was cut
  /// from, so matched events can be removed later.
  std::vector<std::size_t> positions;

  LabelSequence labels() const;
};

/// A learned low-level pattern chosen for the current window, together with
/// the high-level activity it abstracts to and its error score.
struct BestMapping {
  LabelSequence psi;
  ActivityLabel hl_activity;
  double error = 0.0;
};

struct ApplyStats {
  /// Main-loop iterations; bounded by twice the input trace length.
  std::uint64_t iterations = 0;
  /// Head events dropped because no pattern could consume them.
  std::uint64_t ghost_events = 0;
};

Window get_first_window(const EventPtrs& residual, TimestampMs tau_ms,
                        const std::vector<std::string>& gamma);

std::optional<BestMapping> get_best_mapping(const EcseaModel& model,
                                            const Window& window,
                                            double theta);

/// Pairs each label occurrence of psi with the earliest not-yet-taken window
/// event carrying that label; returns window-relative indices in ascending
/// order. Labels with no free event left are skipped.
std::vector<std::size_t> match_psi(const Window& window,
                                   const LabelSequence& psi);

Event create_event(const Window& window, const LabelSequence& psi,
                   const ActivityLabel& hl_activity, MergeType phi,
                   const std::vector<std::string>& gamma);

/// Erases the psi-matched window events from the residual sequence; unmatched
/// window events stay.
void remove_events(EventPtrs& residual, const Window& window,
                   const LabelSequence& psi);

/// Fuses created events that share activity and grouping attributes and whose
/// consecutive timestamps lie closer than tau, recomputing the timestamp via
/// phi over each fused run.
std::vector<Event> merge_events(std::vector<Event> events,
                                const std::vector<std::string>& gamma,
                                MergeType phi, TimestampMs tau_ms);

/// Converts one low-level trace into its high-level counterpart.
Trace apply(const EcseaModel& model, const Trace& ll_trace,
            const AbstractionParams& params, ApplyStats* stats = nullptr);

/// Converts every trace of the log; traces are independent and may be
/// processed in parallel.
EventLog apply(const EcseaModel& model, const EventLog& ll_log,
               const AbstractionParams& params, unsigned threads = 1,
               ApplyStats* stats = nullptr);

} // namespace ecsea

#endif // ECSEA_APPLIER_HPP
