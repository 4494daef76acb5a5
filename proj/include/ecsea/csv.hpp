#ifndef ECSEA_CSV_HPP
#define ECSEA_CSV_HPP

#include "ecsea/event_log.hpp"

#include <string>
#include <vector>

namespace ecsea {

/// Names the CSV headers that hold the mandatory event fields. Columns not
/// listed anywhere are ignored; columns in `attribute_columns` are carried
/// into Event::attributes keyed by their header name.
struct CsvColumnMap {
  std::string case_column;
  std::string activity_column;
  std::string time_column;
  std::vector<std::string> attribute_columns;
  char delimiter = ',';
};

/// Header row required; fields may be double-quoted (RFC 4180 escaping).
/// Timestamps are ISO-8601 or integer epoch milliseconds. Empty attribute
/// cells mean "attribute absent".
/// Throws InputError naming missing mapped columns, or the 1-based data row
/// of an unparseable timestamp.
EventLog parse_csv(const std::string& bytes, const CsvColumnMap& columns);

/// Columns: case_id, activity, timestamp (ISO-8601), then the union of all
/// attribute names in the log, sorted. parse_csv(write_csv(log), matching
/// map) == log as long as no attribute value is the empty string.
std::string write_csv(const EventLog& log, char delimiter = ',');

/// Column map for logs produced by write_csv.
CsvColumnMap csv_self_column_map(const std::string& header_line,
                                 char delimiter = ',');

} // namespace ecsea

#endif // ECSEA_CSV_HPP
