#include "ecsea/model.hpp"

#include "ecsea/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace ecsea {

using nlohmann::json;

std::string to_string(MergeType phi) {
  switch (phi) {
    case MergeType::Min: return "MIN";
    case MergeType::Max: return "MAX";
    case MergeType::Mean: return "MEAN";
    case MergeType::Median: return "MEDIAN";
  }
  return "MIN";
}

MergeType merge_type_from_string(const std::string& text) {
  std::string up;
  for (char c : text) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "MIN") return MergeType::Min;
  if (up == "MAX") return MergeType::Max;
  if (up == "MEAN") return MergeType::Mean;
  if (up == "MEDIAN") return MergeType::Median;
  throw InputError("unknown timestamp-merge-type \"" + text +
                   "\" (expected MIN, MAX, MEAN or MEDIAN)");
}

TimestampMs merged_timestamp(const std::vector<TimestampMs>& sorted_ts,
                             MergeType phi) {
  switch (phi) {
    case MergeType::Min: return sorted_ts.front();
    case MergeType::Max: return sorted_ts.back();
    case MergeType::Mean: {
      std::int64_t sum = 0;
      for (TimestampMs t : sorted_ts) sum += t;
      return static_cast<TimestampMs>(std::llround(
          static_cast<double>(sum) / static_cast<double>(sorted_ts.size())));
    }
    case MergeType::Median: {
      const std::size_t n = sorted_ts.size();
      if (n % 2 == 1) return sorted_ts[n / 2];
      const double mid = (static_cast<double>(sorted_ts[n / 2 - 1]) +
                          static_cast<double>(sorted_ts[n / 2])) /
                         2.0;
      return static_cast<TimestampMs>(std::llround(mid));
    }
  }
  return sorted_ts.front();
}

void AbstractionParams::normalize_and_validate() {
  if (tau_ms < 0) throw InputError("tau must be >= 0 ms");
  if (!(theta > 0)) throw InputError("theta must be > 0");
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
}

std::vector<std::string> EcseaModel::consistency_errors() const {
  std::vector<std::string> errors;

  // Reverse-index hlc; consistency means that index equals llc exactly.
  std::map<ActivityLabel, std::set<ActivityLabel>> derived;
  for (const auto& [hl, sequences] : hlc) {
    if (sequences.empty())
      errors.push_back("hlc entry \"" + hl + "\" has no sequences");
    for (const auto& [seq, count] : sequences) {
      if (seq.empty())
        errors.push_back("hlc entry \"" + hl + "\" contains an empty sequence");
      if (count == 0)
        errors.push_back("hlc entry \"" + hl + "\" has a zero counter");
      for (const ActivityLabel& ll : seq) derived[ll].insert(hl);
    }
  }
  for (const auto& [ll, hls] : llc) {
    auto it = derived.find(ll);
    const std::set<ActivityLabel>* from_hlc =
        it == derived.end() ? nullptr : &it->second;
    for (const ActivityLabel& hl : hls)
      if (!from_hlc || !from_hlc->count(hl))
        errors.push_back("llc maps \"" + ll + "\" to \"" + hl +
                         "\" but no hlc sequence of \"" + hl +
                         "\" contains it");
  }
  for (const auto& [ll, hls] : derived)
    if (!llc.count(ll))
      errors.push_back("low-level activity \"" + ll +
                       "\" occurs in hlc but is missing from llc");
    else
      for (const ActivityLabel& hl : hls)
        if (!llc.at(ll).count(hl))
          errors.push_back("hlc sequence of \"" + hl + "\" contains \"" + ll +
                           "\" but llc does not map it there");
  for (const auto& [ll, hls] : llc)
    if (hlc.count(ll))
      errors.push_back("activity \"" + ll +
                       "\" appears in both the low-level and high-level "
                       "universe");
  return errors;
}

std::string save_model(const EcseaModel& model,
                       const AbstractionParams& params) {
  json doc;
  doc["format_version"] = 1;
  doc["params"] = {{"tau_ms", params.tau_ms},
                   {"theta", params.theta},
                   {"phi", to_string(params.phi)},
                   {"gamma", params.gamma}};
  json llc = json::object();
  for (const auto& [ll, hls] : model.llc)
    llc[ll] = std::vector<std::string>(hls.begin(), hls.end());
  doc["llc"] = std::move(llc);
  json hlc = json::object();
  for (const auto& [hl, sequences] : model.hlc) {
    json list = json::array();
    for (const auto& [seq, count] : sequences)
      list.push_back({{"sequence", seq}, {"count", count}});
    hlc[hl] = std::move(list);
  }
  doc["hlc"] = std::move(hlc);
  return doc.dump(2) + "\n";
}

std::pair<EcseaModel, AbstractionParams> load_model(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model file: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != 1)
      throw ModelError("model file: unsupported format_version " +
                       std::to_string(version));

    AbstractionParams params;
    const json& p = doc.at("params");
    params.tau_ms = p.at("tau_ms").get<TimestampMs>();
    params.theta = p.at("theta").get<double>();
    params.phi = merge_type_from_string(p.at("phi").get<std::string>());
    params.gamma = p.at("gamma").get<std::vector<std::string>>();
    params.normalize_and_validate();

    EcseaModel model;
    for (const auto& [ll, hls] : doc.at("llc").items())
      for (const auto& hl : hls)
        model.llc[ll].insert(hl.get<std::string>());
    for (const auto& [hl, list] : doc.at("hlc").items())
      for (const auto& entry : list) {
        const LabelSequence seq = entry.at("sequence").get<LabelSequence>();
        const std::uint64_t count = entry.at("count").get<std::uint64_t>();
        model.hlc[hl][seq] = count;
      }

    const std::vector<std::string> errors = model.consistency_errors();
    if (!errors.empty())
      throw ModelError("model file: inconsistent model: " + errors.front());
    return {std::move(model), std::move(params)};
  } catch (const json::exception& e) {
    throw ModelError(std::string("model file: ") + e.what());
  } catch (const InputError& e) {
    throw ModelError(std::string("model file: ") + e.what());
  }
}

} // namespace ecsea
