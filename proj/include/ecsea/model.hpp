#ifndef ECSEA_MODEL_HPP
#define ECSEA_MODEL_HPP

#include "ecsea/event_log.hpp"
#include "ecsea/timestamp.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ecsea {

/// How the timestamps of merged low-level events become the timestamp of
/// the created high-level event.
enum class MergeType { Min, Max, Mean, Median };

std::string to_string(MergeType phi);
/// Accepts MIN/MAX/MEAN/MEDIAN (case-insensitive); throws InputError.
MergeType merge_type_from_string(const std::string& text);

TimestampMs merged_timestamp(const std::vector<TimestampMs>& sorted_ts,
                             MergeType phi);

/// The hyperparameters a model is trained and applied with.
struct AbstractionParams {
  /// Maximal time span in milliseconds between a low-level event and the
  /// high-level event it belongs to; also bounds window width.
  TimestampMs tau_ms = 5000;
  /// Upper bound on the error score below which a candidate mapping is
  /// accepted.
  double theta = 0.6;
  MergeType phi = MergeType::Min;
  /// Attribute names whose equality gates which events merge together
  /// (e.g. {"user"}); kept sorted and unique.
  std::vector<std::string> gamma;

  /// Sorts/uniques gamma; throws InputError when tau < 0 or theta <= 0.
  void normalize_and_validate();

  friend bool operator==(const AbstractionParams&,
                         const AbstractionParams&) = default;
};

/// The learned mapping model: `llc` sends each low-level activity to the
/// high-level activities it may belong to; `hlc` sends each high-level
/// activity to the low-level activity sequences observed for it, with
/// occurrence counters.
struct EcseaModel {
  std::map<ActivityLabel, std::set<ActivityLabel>> llc;
  std::map<ActivityLabel, std::map<LabelSequence, std::uint64_t>> hlc;

  bool empty() const { return llc.empty() && hlc.empty(); }

  /// Structural problems, empty when the model is consistent:
  /// llc must equal the reverse index of hlc, sequences must be non-empty
  /// with counters >= 1, and the two label universes must not overlap.
  std::vector<std::string> consistency_errors() const;

  friend bool operator==(const EcseaModel&, const EcseaModel&) = default;
};

/// Canonical (sorted-key) JSON document: identical models serialize to
/// identical bytes. The params travel inside the file so a model is always
/// applied with the values it was selected with.
std::string save_model(const EcseaModel& model, const AbstractionParams& params);

/// Throws ModelError on parse failure, unsupported format_version, invalid
/// params, or consistency violations (naming the offending labels).
std::pair<EcseaModel, AbstractionParams> load_model(const std::string& bytes);

} // namespace ecsea

#endif // ECSEA_MODEL_HPP
