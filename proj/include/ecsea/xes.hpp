#ifndef ECSEA_XES_HPP
#define ECSEA_XES_HPP

#include "ecsea/event_log.hpp"

#include <string>

namespace ecsea {

/// Reads an XES document (IEEE 1849 subset: string/date/int/float/boolean
/// attributes; no nested containers). Traces are keyed by their
/// `concept:name`; events need `concept:name` and `time:timestamp`, all
/// other event attributes are kept verbatim as text.
/// Throws InputError on malformed XML (with line number) or missing
/// mandatory fields (naming the trace and event index).
EventLog parse_xes(const std::string& bytes);

/// Inverse of parse_xes up to attribute-order normalization:
/// parse_xes(write_xes(log)) == log.
std::string write_xes(const EventLog& log);

} // namespace ecsea

#endif // ECSEA_XES_HPP
