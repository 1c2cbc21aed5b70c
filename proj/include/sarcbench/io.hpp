#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sarcbench {

std::string read_file(const std::filesystem::path& path);

// Write-temp-then-rename so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Same rename discipline for content too large to buffer: the producer
// writes straight into the temporary file's stream.
void atomic_write_stream(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& producer);

// FNV-1a 64-bit over raw bytes, rendered as "fnv1a64:<16 hex digits>".
std::string content_fingerprint(std::string_view bytes);

// Current time as RFC 3339 UTC ("2026-08-19T12:00:00Z").
std::string utc_timestamp();

}  // namespace sarcbench
