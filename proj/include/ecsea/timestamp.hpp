#ifndef ECSEA_TIMESTAMP_HPP
#define ECSEA_TIMESTAMP_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace ecsea {

/// Instants are epoch milliseconds UTC throughout the library.
using TimestampMs = std::int64_t;

/// Accepts either a plain integer (epoch milliseconds) or an ISO-8601-style
/// datetime "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM]". A missing zone
/// designator means UTC. Returns nullopt on anything else.
std::optional<TimestampMs> parse_timestamp_ms(const std::string& text);

/// Formats as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string format_timestamp_ms(TimestampMs ms);

} // namespace ecsea

#endif // ECSEA_TIMESTAMP_HPP
