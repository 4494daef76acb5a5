#ifndef ECSEA_TRAINER_HPP
#define ECSEA_TRAINER_HPP

#include "ecsea/event_log.hpp"
#include "ecsea/model.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ecsea {

/// A low-level trace and the high-level trace of the same case. The pointers
/// refer into the logs the pair was built from, which must outlive it.
struct TracePair {
  const Trace* ll = nullptr;
  const Trace* hl = nullptr;

  const std::string& case_id() const { return ll->case_id; }
};

struct PairingResult {
  std::vector<TracePair> pairs; // sorted by case id
  std::vector<std::string> ll_only_cases;
  std::vector<std::string> hl_only_cases;
};

/// Pairs the two logs by case id. Cases present in only one log end up in the
/// *_only lists. Throws InputError when the activity universes overlap or no
/// case occurs in both logs.
PairingResult pair_logs(const EventLog& ll_log, const EventLog& hl_log);

struct SplitConfig {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

/// Deterministic seeded split; both sides keep at least one pair and are
/// returned sorted by case id. Requires at least two pairs.
std::pair<std::vector<TracePair>, std::vector<TracePair>> split_pairs(
    std::vector<TracePair> pairs, const SplitConfig& config);

/// The low-level events of one trace, partitioned into time-ordered sequences
/// whose events agree on every grouping attribute.
using GammaSequences = std::map<GammaKey, std::vector<const Event*>>;

GammaSequences build_gamma_sequences(const Trace& ll_trace,
                                     const std::vector<std::string>& gamma);

/// assigned[i] holds the low-level events mapped to the i-th high-level event
/// of the trace, in time order. Low-level events with no high-level event of
/// their group within tau are ghosts.
struct AssignResult {
  std::vector<std::vector<const Event*>> assigned;
  std::vector<const Event*> ghosts;
};

AssignResult assign_events(const Trace& hl_trace, const GammaSequences& sequences,
                           TimestampMs tau_ms,
                           const std::vector<std::string>& gamma);

/// One (high-level activity, low-level label sequence) entry per high-level
/// event with a non-empty assignment, in trace order.
std::vector<std::pair<ActivityLabel, LabelSequence>> to_activity_mapping(
    const Trace& hl_trace, const AssignResult& assignment);

struct FitStats {
  std::uint64_t ghost_ll_events = 0;
  /// High-level events no low-level events could be assigned to.
  std::uint64_t unlearnable_hl_events = 0;
};

/// Folds one trace pair into the model: pattern counters are incremented and
/// the reverse activity mapping is extended. Uses tau and gamma from params.
void fit(EcseaModel& model, const TracePair& pair,
         const AbstractionParams& params, FitStats* stats = nullptr);

/// fit over all pairs, starting from an empty model. Order-independent.
EcseaModel train(const std::vector<TracePair>& pairs,
                 const AbstractionParams& params, FitStats* stats = nullptr);

/// Mean similarity between the high-level activity sequence predicted from
/// each pair's low-level trace and the observed one.
double evaluate_accuracy(const EcseaModel& model,
                         const std::vector<TracePair>& pairs,
                         const AbstractionParams& params, unsigned threads = 1);

struct GridConfig {
  std::vector<TimestampMs> taus_ms = {1000, 2000, 5000, 10000, 30000};
  std::vector<double> thetas = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<MergeType> phis = {MergeType::Min, MergeType::Max,
                                 MergeType::Mean, MergeType::Median};
  std::vector<std::string> gamma;
  unsigned threads = 1;
};

struct GridCell {
  AbstractionParams params;
  double train_accuracy = 0.0;
};

struct GridSearchResult {
  EcseaModel model; // trained with the winning tau
  AbstractionParams params;
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;
  std::vector<GridCell> cells;
  FitStats stats; // of the winning tau's fit
};

/// Trains one model per tau, scores every (tau, theta, phi) cell on the
/// training pairs and keeps the best (ties: smaller tau, smaller theta,
/// earlier phi). The winner is rescored on the test pairs when given any.
GridSearchResult grid_search(const std::vector<TracePair>& train_pairs,
                             const std::vector<TracePair>& test_pairs,
                             const GridConfig& config);

/// Machine-readable summary of a grid search: every cell, the winning
/// parameters and their accuracies, and the fit diagnostics.
std::string training_report_json(const GridSearchResult& result);

} // namespace ecsea

#endif // ECSEA_TRAINER_HPP
