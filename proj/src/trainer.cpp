#include "ecsea/trainer.hpp"

#include "ecsea/applier.hpp"
#include "ecsea/distance.hpp"
#include "ecsea/errors.hpp"
#include "ecsea/parallel.hpp"
#include "ecsea/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace ecsea {

PairingResult pair_logs(const EventLog& ll_log, const EventLog& hl_log) {
  // Def.: the two activity universes must not overlap, otherwise converted
  // events would be ambiguous.
  const std::set<ActivityLabel> ll_acts = ll_log.activity_set();
  const std::set<ActivityLabel> hl_acts = hl_log.activity_set();
  std::vector<ActivityLabel> shared;
  std::set_intersection(ll_acts.begin(), ll_acts.end(), hl_acts.begin(),
                        hl_acts.end(), std::back_inserter(shared));
  if (!shared.empty()) {
    std::string msg =
        "low-level and high-level activity universes overlap: ";
    for (std::size_t i = 0; i < shared.size() && i < 5; ++i) {
      if (i) msg += ", ";
      msg += "\"" + shared[i] + "\"";
    }
    if (shared.size() > 5)
      msg += " and " + std::to_string(shared.size() - 5) + " more";
    throw InputError(msg);
  }

  PairingResult result;
  for (const auto& [case_id, trace] : ll_log.traces()) {
    const Trace* hl = hl_log.find_trace(case_id);
    if (hl)
      result.pairs.push_back({&trace, hl});
    else
      result.ll_only_cases.push_back(case_id);
  }
  for (const auto& [case_id, trace] : hl_log.traces())
    if (!ll_log.find_trace(case_id)) result.hl_only_cases.push_back(case_id);

  if (result.pairs.empty())
    throw InputError("the low-level and high-level logs share no case id");
  return result;
}

std::pair<std::vector<TracePair>, std::vector<TracePair>> split_pairs(
    std::vector<TracePair> pairs, const SplitConfig& config) {
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
    throw InputError("train fraction must lie strictly between 0 and 1");
  if (pairs.size() < 2)
    throw InputError("a train/test split needs at least two trace pairs");

  auto by_case = [](const TracePair& a, const TracePair& b) {
    return a.case_id() < b.case_id();
  };
  std::sort(pairs.begin(), pairs.end(), by_case);
  Rng rng(config.seed);
  shuffle(pairs, rng);

  const auto n = pairs.size();
  const std::size_t train_n = std::clamp<std::size_t>(
      static_cast<std::size_t>(
          std::llround(config.train_fraction * static_cast<double>(n))),
      1, n - 1);

  std::vector<TracePair> train(pairs.begin(),
                               pairs.begin() + static_cast<std::ptrdiff_t>(train_n));
  std::vector<TracePair> test(pairs.begin() + static_cast<std::ptrdiff_t>(train_n),
                              pairs.end());
  std::sort(train.begin(), train.end(), by_case);
  std::sort(test.begin(), test.end(), by_case);
  return {std::move(train), std::move(test)};
}

GammaSequences build_gamma_sequences(const Trace& ll_trace,
                                     const std::vector<std::string>& gamma) {
  require_attributes(ll_trace, gamma);
  GammaSequences sequences;
  for (const Event& e : ll_trace.events)
    sequences[gamma_key(e, gamma)].push_back(&e);
  return sequences;
}

AssignResult assign_events(const Trace& hl_trace,
                           const GammaSequences& sequences, TimestampMs tau_ms,
                           const std::vector<std::string>& gamma) {
  AssignResult result;
  result.assigned.resize(hl_trace.events.size());

  std::map<GammaKey, std::vector<std::size_t>> hl_groups;
  for (std::size_t h = 0; h < hl_trace.events.size(); ++h)
    hl_groups[gamma_key(hl_trace.events[h], gamma)].push_back(h);

  for (const auto& [key, ll_events] : sequences) {
    auto group = hl_groups.find(key);
    if (group == hl_groups.end()) {
      // No high-level event shares these attribute values.
      result.ghosts.insert(result.ghosts.end(), ll_events.begin(),
                           ll_events.end());
      continue;
    }
    for (const Event* e : ll_events) {
      // Closest high-level event of the group wins; on equal distance the
      // earlier one (the group is in trace order).
      std::size_t best_h = 0;
      TimestampMs best_distance = 0;
      bool found = false;
      for (std::size_t h : group->second) {
        const TimestampMs distance =
            std::abs(hl_trace.events[h].timestamp_ms - e->timestamp_ms);
        if (!found || distance < best_distance) {
          found = true;
          best_h = h;
          best_distance = distance;
        }
      }
      if (found && best_distance <= tau_ms)
        result.assigned[best_h].push_back(e);
      else
        result.ghosts.push_back(e);
    }
  }
  return result;
}

std::vector<std::pair<ActivityLabel, LabelSequence>> to_activity_mapping(
    const Trace& hl_trace, const AssignResult& assignment) {
  std::vector<std::pair<ActivityLabel, LabelSequence>> mapping;
  for (std::size_t h = 0; h < hl_trace.events.size(); ++h) {
    if (assignment.assigned[h].empty()) continue;
    LabelSequence labels;
    labels.reserve(assignment.assigned[h].size());
    for (const Event* e : assignment.assigned[h])
      labels.push_back(e->activity);
    mapping.emplace_back(hl_trace.events[h].activity, std::move(labels));
  }
  return mapping;
}

void fit(EcseaModel& model, const TracePair& pair,
         const AbstractionParams& params, FitStats* stats) {
  const GammaSequences sequences =
      build_gamma_sequences(*pair.ll, params.gamma);
  const AssignResult assignment =
      assign_events(*pair.hl, sequences, params.tau_ms, params.gamma);

  for (auto& [hl_activity, labels] :
       to_activity_mapping(*pair.hl, assignment)) {
    for (const ActivityLabel& ll : labels) model.llc[ll].insert(hl_activity);
    ++model.hlc[hl_activity][std::move(labels)];
  }

  if (stats) {
    stats->ghost_ll_events += assignment.ghosts.size();
    for (const auto& lls : assignment.assigned)
      if (lls.empty()) ++stats->unlearnable_hl_events;
  }
}

EcseaModel train(const std::vector<TracePair>& pairs,
                 const AbstractionParams& params, FitStats* stats) {
  EcseaModel model;
  for (const TracePair& pair : pairs) fit(model, pair, params, stats);
  return model;
}

double evaluate_accuracy(const EcseaModel& model,
                         const std::vector<TracePair>& pairs,
                         const AbstractionParams& params, unsigned threads) {
  if (pairs.empty())
    throw InputError("accuracy is undefined over an empty pair set");
  std::vector<double> similarity(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const Trace predicted = apply(model, *pairs[i].ll, params);
    similarity[i] = normalized_similarity(predicted.activity_sequence(),
                                          pairs[i].hl->activity_sequence());
  });
  double sum = 0.0;
  for (double s : similarity) sum += s;
  return sum / static_cast<double>(pairs.size());
}

GridSearchResult grid_search(const std::vector<TracePair>& train_pairs,
                             const std::vector<TracePair>& test_pairs,
                             const GridConfig& config) {
  if (train_pairs.empty())
    throw InputError("grid search needs at least one training pair");
  if (config.taus_ms.empty() || config.thetas.empty() || config.phis.empty())
    throw InputError("grid search needs non-empty parameter grids");

  std::vector<TimestampMs> taus = config.taus_ms;
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  std::vector<double> thetas = config.thetas;
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  std::vector<MergeType> phis = config.phis;
  std::sort(phis.begin(), phis.end(), [](MergeType a, MergeType b) {
    return static_cast<int>(a) < static_cast<int>(b);
  });
  phis.erase(std::unique(phis.begin(), phis.end()), phis.end());

  GridSearchResult result;
  bool have_best = false;
  std::vector<EcseaModel> models(taus.size());
  std::size_t best_tau_index = 0;

  for (std::size_t t = 0; t < taus.size(); ++t) {
    AbstractionParams params;
    params.tau_ms = taus[t];
    params.gamma = config.gamma;
    params.theta = thetas.front();
    params.phi = phis.front();
    params.normalize_and_validate();

    FitStats stats;
    models[t] = train(train_pairs, params, &stats);

    for (double theta : thetas)
      for (MergeType phi : phis) {
        params.theta = theta;
        params.phi = phi;
        const double acc =
            evaluate_accuracy(models[t], train_pairs, params, config.threads);
        result.cells.push_back({params, acc});
        // Strict improvement only: ties resolve to the earlier cell, i.e.
        // smaller tau, then smaller theta, then earlier phi.
        if (!have_best || acc > result.train_accuracy) {
          have_best = true;
          result.params = params;
          result.train_accuracy = acc;
          result.stats = stats;
          best_tau_index = t;
        }
      }
  }

  result.model = std::move(models[best_tau_index]);
  if (!test_pairs.empty())
    result.test_accuracy = evaluate_accuracy(result.model, test_pairs,
                                             result.params, config.threads);
  return result;
}

std::string training_report_json(const GridSearchResult& result) {
  nlohmann::json doc;
  nlohmann::json cells = nlohmann::json::array();
  for (const GridCell& cell : result.cells)
    cells.push_back({{"tau_ms", cell.params.tau_ms},
                     {"theta", cell.params.theta},
                     {"phi", to_string(cell.params.phi)},
                     {"train_acc", cell.train_accuracy}});
  doc["cells"] = std::move(cells);
  doc["winner"] = {{"tau_ms", result.params.tau_ms},
                   {"theta", result.params.theta},
                   {"phi", to_string(result.params.phi)},
                   {"gamma", result.params.gamma}};
  doc["train_acc"] = result.train_accuracy;
  if (result.test_accuracy) doc["test_acc"] = *result.test_accuracy;
  doc["ghost_ll_events"] = result.stats.ghost_ll_events;
  doc["unlearnable_hl_events"] = result.stats.unlearnable_hl_events;
  return doc.dump(2) + "\n";
}

} // namespace ecsea
