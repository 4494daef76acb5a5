#ifndef ECSEA_TESTS_SUPPORT_HPP
#define ECSEA_TESTS_SUPPORT_HPP

// Shared fixtures and oracles for the test suite: the bundled demo logs (a
// nine-event collaboration-platform trace and the four workspace actions it
// abstracts to), an independent brute-force edit-distance oracle, and a
// generator of random (model, trace) instances for property tests.

#include "ecsea/csv.hpp"
#include "ecsea/event_log.hpp"
#include "ecsea/model.hpp"
#include "ecsea/rng.hpp"
#include "ecsea/trainer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ecsea::test {

// Same content as data/demo_ll.csv: three users working on a file and a wiki
// article in one case. Event 109 (community.visit) belongs to no workspace
// action and must come out as a ghost.
inline const char* demo_ll_csv() {
  return "ID,USER_UUID,ITEM_UUID,C_ID,EVENT_TS,EVENT_NAME\n"
         "104,33d689884-ef3...,072adbbd-715...,1337,2021-11-11 10:47:16,file.file.created\n"
         "105,33d689884-ef3...,072adbbd-715...,1337,2021-11-11 10:47:17,file.collection.file.added\n"
         "106,84f5d4ae2-434...,08441212-343...,1337,2021-11-11 10:47:18,wiki.page.created\n"
         "107,33d689884-ef3...,072adbbd-715...,1337,2021-11-11 10:47:19,files.file.notification.set\n"
         "108,84f5d4ae2-434...,08441212-343...,1337,2021-11-11 10:47:20,wiki.page.follow\n"
         "109,33d689884-ef3...,,1337,2021-11-11 10:48:18,community.visit\n"
         "110,65788ec84-a12...,08441212-343...,1337,2021-11-11 10:51:11,wiki.page.updated\n"
         "111,65788ec84-a12...,08441212-343...,1337,2021-11-11 10:51:12,wiki.page.tag.added\n"
         "112,33d689884-ef3...,08441212-343...,1337,2021-11-11 10:56:44,wiki.page.updated\n";
}

// Same content as data/demo_hl.csv: the observed high-level log of the case.
inline const char* demo_hl_csv() {
  return "ID,USER_UUID,C_ID,TIMESTAMP,ACTIVITY\n"
         "601,33d689884-ef3...,1337,2021-11-11 10:47:16,gws.filelibrary.file.created\n"
         "602,84f5d4ae2-434...,1337,2021-11-11 10:47:18,gws.wiki.created\n"
         "603,65788ec84-a12...,1337,2021-11-11 10:51:11,gws.wiki.wikiarticle.tag.created\n"
         "604,33d689884-ef3...,1337,2021-11-11 10:56:44,gws.wiki.wikiarticle.updated\n";
}

inline CsvColumnMap demo_ll_columns() {
  return {"C_ID", "EVENT_NAME", "EVENT_TS", {"USER_UUID", "ITEM_UUID"}, ','};
}

inline CsvColumnMap demo_hl_columns() {
  return {"C_ID", "ACTIVITY", "TIMESTAMP", {"USER_UUID"}, ','};
}

inline EventLog demo_ll_log() { return parse_csv(demo_ll_csv(), demo_ll_columns()); }
inline EventLog demo_hl_log() { return parse_csv(demo_hl_csv(), demo_hl_columns()); }

// The settings the demo pair is trained and applied with.
inline AbstractionParams demo_params() {
  return AbstractionParams{5000, 1.0, MergeType::Min, {"USER_UUID"}};
}

// The model the demo pair trains to. Four patterns, one per workspace action;
// wiki.page.updated is ambiguous between the two wiki actions.
inline EcseaModel expected_demo_model() {
  EcseaModel m;
  m.hlc["gws.filelibrary.file.created"][{"file.file.created",
                                         "file.collection.file.added",
                                         "files.file.notification.set"}] = 1;
  m.hlc["gws.wiki.created"][{"wiki.page.created", "wiki.page.follow"}] = 1;
  m.hlc["gws.wiki.wikiarticle.tag.created"][{"wiki.page.updated",
                                             "wiki.page.tag.added"}] = 1;
  m.hlc["gws.wiki.wikiarticle.updated"][{"wiki.page.updated"}] = 1;
  m.llc["file.file.created"] = {"gws.filelibrary.file.created"};
  m.llc["file.collection.file.added"] = {"gws.filelibrary.file.created"};
  m.llc["files.file.notification.set"] = {"gws.filelibrary.file.created"};
  m.llc["wiki.page.created"] = {"gws.wiki.created"};
  m.llc["wiki.page.follow"] = {"gws.wiki.created"};
  m.llc["wiki.page.updated"] = {"gws.wiki.wikiarticle.tag.created",
                                "gws.wiki.wikiarticle.updated"};
  m.llc["wiki.page.tag.added"] = {"gws.wiki.wikiarticle.tag.created"};
  return m;
}

inline LabelSequence demo_hl_sequence() {
  return {"gws.filelibrary.file.created", "gws.wiki.created",
          "gws.wiki.wikiarticle.tag.created", "gws.wiki.wikiarticle.updated"};
}

// ---------------------------------------------------------------------------

// One-letter labels from a compact string, so distance tests read like the
// usual string examples: seq("kitten") -> <k,i,t,t,e,n>.
inline LabelSequence seq(std::string_view letters) {
  LabelSequence out;
  out.reserve(letters.size());
  for (char c : letters) out.emplace_back(1, c);
  return out;
}

// Plain recursive transcription of the optimal-string-alignment recurrence
// (delete, insert, substitute, swap adjacent), kept deliberately naive and
// separate from the production rolling-row implementation.
inline std::size_t dld_oracle_rec(std::span<const ActivityLabel> a,
                                  std::span<const ActivityLabel> b,
                                  std::size_t i, std::size_t j) {
  if (i == 0) return j;
  if (j == 0) return i;
  std::size_t best = dld_oracle_rec(a, b, i - 1, j) + 1;
  best = std::min(best, dld_oracle_rec(a, b, i, j - 1) + 1);
  best = std::min(best, dld_oracle_rec(a, b, i - 1, j - 1) +
                            (a[i - 1] == b[j - 1] ? 0 : 1));
  if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
    best = std::min(best, dld_oracle_rec(a, b, i - 2, j - 2) + 1);
  return best;
}

inline std::size_t dld_oracle(std::span<const ActivityLabel> a,
                              std::span<const ActivityLabel> b) {
  return dld_oracle_rec(a, b, a.size(), b.size());
}

// ---------------------------------------------------------------------------

inline Event ev(std::string activity, TimestampMs ts, std::string case_id,
                std::map<std::string, std::string> attributes = {},
                std::size_t ingest_index = 0) {
  Event e;
  e.activity = std::move(activity);
  e.timestamp_ms = ts;
  e.case_id = std::move(case_id);
  e.attributes = std::move(attributes);
  e.ingest_index = ingest_index;
  return e;
}

inline Trace make_trace(std::string case_id, std::vector<Event> events) {
  Trace t;
  t.case_id = std::move(case_id);
  t.events = std::move(events);
  for (std::size_t i = 0; i < t.events.size(); ++i)
    t.events[i].ingest_index = i;
  t.sort_events();
  return t;
}

inline EventLog make_log(std::vector<Trace> traces) {
  EventLog log;
  for (Trace& t : traces)
    for (Event& e : t.events) {
      e.case_id = t.case_id;
      log.add_event(std::move(e));
    }
  log.finalize();
  return log;
}

// ---------------------------------------------------------------------------

// A random but internally consistent model plus a random trace to apply it
// to. Traces mix learnable labels, repeated labels and unknown ones, so the
// greedy loop exercises both the match path and the ghost-drop path.
struct RandomInstance {
  EcseaModel model;
  Trace trace;
  AbstractionParams params;
};

inline RandomInstance random_instance(Rng& rng) {
  RandomInstance inst;

  std::vector<ActivityLabel> ll_labels;
  const std::size_t n_ll = 3 + rng.below(4);
  for (std::size_t i = 0; i < n_ll; ++i)
    ll_labels.push_back("l" + std::to_string(i + 1));
  const std::size_t n_hl = 1 + rng.below(4);
  for (std::size_t h = 0; h < n_hl; ++h) {
    const ActivityLabel hl = "h" + std::to_string(h + 1);
    const std::size_t n_seqs = 1 + rng.below(3);
    for (std::size_t s = 0; s < n_seqs; ++s) {
      LabelSequence pattern;
      const std::size_t len = 1 + rng.below(4);
      for (std::size_t k = 0; k < len; ++k)
        pattern.push_back(ll_labels[rng.below(ll_labels.size())]);
      inst.model.hlc[hl][pattern] = 1 + rng.below(3);
    }
  }
  for (const auto& [hl, patterns] : inst.model.hlc)
    for (const auto& [pattern, count] : patterns)
      for (const ActivityLabel& ll : pattern) inst.model.llc[ll].insert(hl);

  inst.params.tau_ms = 500 + static_cast<TimestampMs>(rng.below(8000));
  inst.params.theta = 0.05 + rng.uniform01() * 1.2;
  inst.params.phi = static_cast<MergeType>(rng.below(4));
  if (rng.bernoulli(0.5)) inst.params.gamma = {"u"};

  const std::size_t len = rng.below(31);
  TimestampMs ts = 1'600'000'000'000;
  std::vector<Event> events;
  for (std::size_t i = 0; i < len; ++i) {
    ts += static_cast<TimestampMs>(
        rng.below(static_cast<std::uint64_t>(inst.params.tau_ms) * 6 / 5 + 1));
    ActivityLabel label = rng.bernoulli(0.15)
                              ? "zz" + std::to_string(1 + rng.below(2))
                              : ll_labels[rng.below(ll_labels.size())];
    events.push_back(ev(std::move(label), ts, "c",
                        {{"u", "u" + std::to_string(rng.below(3))}}));
  }
  inst.trace = make_trace("c", std::move(events));
  return inst;
}

} // namespace ecsea::test

#endif // ECSEA_TESTS_SUPPORT_HPP
