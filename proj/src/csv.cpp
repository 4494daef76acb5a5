#include "ecsea/csv.hpp"

#include "ecsea/errors.hpp"
#include "ecsea/timestamp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ecsea {

namespace {

// Splits one record starting at `pos`; handles quoted fields with doubled
// quotes and embedded delimiters/newlines. Advances `pos` past the record.
std::vector<std::string> read_record(const std::string& s, std::size_t& pos,
                                     char delim) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  while (pos < s.size()) {
    const char c = s[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < s.size() && s[pos + 1] == '"') {
          field += '"';
          pos += 2;
        } else {
          in_quotes = false;
          ++pos;
        }
      } else {
        field += c;
        ++pos;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      ++pos;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
      ++pos;
    } else if (c == '\n' || c == '\r') {
      ++pos;
      if (c == '\r' && pos < s.size() && s[pos] == '\n') ++pos;
      break;
    } else {
      field += c;
      ++pos;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

bool needs_quoting(const std::string& s, char delim) {
  return s.find_first_of(std::string{delim, '"', '\n', '\r'}) !=
         std::string::npos;
}

std::string csv_field(const std::string& s, char delim) {
  if (!needs_quoting(s, delim)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name, const char* role) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw InputError(std::string("CSV: ") + role + " column \"" + name +
                     "\" not found in header");
  return static_cast<std::size_t>(it - header.begin());
}

} // namespace

EventLog parse_csv(const std::string& bytes, const CsvColumnMap& columns) {
  std::size_t pos = 0;
  if (bytes.empty()) throw InputError("CSV: empty input, no header row");
  const std::vector<std::string> header =
      read_record(bytes, pos, columns.delimiter);

  const std::size_t case_col =
      find_column(header, columns.case_column, "case id");
  const std::size_t act_col =
      find_column(header, columns.activity_column, "activity");
  const std::size_t time_col =
      find_column(header, columns.time_column, "timestamp");
  std::vector<std::pair<std::string, std::size_t>> attr_cols;
  for (const std::string& name : columns.attribute_columns)
    attr_cols.emplace_back(name, find_column(header, name, "attribute"));

  EventLog log;
  std::size_t ingest = 0;
  std::size_t row = 0;
  while (pos < bytes.size()) {
    // Skip trailing blank lines.
    if (bytes[pos] == '\n' || bytes[pos] == '\r') {
      ++pos;
      continue;
    }
    const std::vector<std::string> fields =
        read_record(bytes, pos, columns.delimiter);
    ++row;
    if (fields.size() != header.size())
      throw InputError("CSV: row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));

    Event event;
    event.case_id = fields[case_col];
    event.activity = fields[act_col];
    if (event.case_id.empty())
      throw InputError("CSV: row " + std::to_string(row) + ": empty case id");
    if (event.activity.empty())
      throw InputError("CSV: row " + std::to_string(row) + ": empty activity");
    auto ts = parse_timestamp_ms(fields[time_col]);
    if (!ts)
      throw InputError("CSV: row " + std::to_string(row) +
                       ": unparseable timestamp \"" + fields[time_col] + "\"");
    event.timestamp_ms = *ts;
    event.ingest_index = ingest++;
    for (const auto& [name, idx] : attr_cols)
      if (!fields[idx].empty()) event.attributes[name] = fields[idx];
    log.add_event(std::move(event));
  }
  log.finalize();
  return log;
}

std::string write_csv(const EventLog& log, char delimiter) {
  std::set<std::string> attr_names;
  for (const auto& [id, trace] : log.traces())
    for (const Event& e : trace.events)
      for (const auto& [name, value] : e.attributes) attr_names.insert(name);

  std::ostringstream out;
  out << "case_id" << delimiter << "activity" << delimiter << "timestamp";
  for (const std::string& name : attr_names)
    out << delimiter << csv_field(name, delimiter);
  out << "\n";
  for (const auto& [id, trace] : log.traces()) {
    for (const Event& e : trace.events) {
      out << csv_field(e.case_id, delimiter) << delimiter
          << csv_field(e.activity, delimiter) << delimiter
          << format_timestamp_ms(e.timestamp_ms);
      for (const std::string& name : attr_names) {
        out << delimiter;
        if (const std::string* v = e.attribute(name))
          out << csv_field(*v, delimiter);
      }
      out << "\n";
    }
  }
  return out.str();
}

CsvColumnMap csv_self_column_map(const std::string& header_line,
                                 char delimiter) {
  std::size_t pos = 0;
  const std::vector<std::string> header =
      read_record(header_line, pos, delimiter);
  CsvColumnMap map;
  map.case_column = "case_id";
  map.activity_column = "activity";
  map.time_column = "timestamp";
  map.delimiter = delimiter;
  for (const std::string& name : header)
    if (name != "case_id" && name != "activity" && name != "timestamp")
      map.attribute_columns.push_back(name);
  return map;
}

} // namespace ecsea
