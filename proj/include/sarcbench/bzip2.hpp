#pragma once

#include <string>
#include <string_view>

namespace sarcbench {

// True when the buffer starts with a bzip2 stream header ("BZh" + level).
bool looks_like_bz2(std::string_view bytes);

// Decompresses one or more concatenated bzip2 streams. Block and stream
// CRCs are verified; malformed input throws IoError.
std::string bz2_decompress(std::string_view compressed);

}  // namespace sarcbench
