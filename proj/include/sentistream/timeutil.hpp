#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sentistream {

// UTC instants are carried as milliseconds since the Unix epoch.

// Formats as ISO-8601 UTC with millisecond precision,
// e.g. 2026-08-10T12:34:56.789Z.
std::string to_iso8601(std::int64_t epoch_ms);

// Parses ISO-8601 UTC ("YYYY-MM-DDTHH:MM:SS[.fff]Z"). Returns nullopt on
// anything else; no local-time or offset forms.
std::optional<std::int64_t> parse_iso8601(const std::string& s);

}  // namespace sentistream
