#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mdf {

/// HH:MM:SS:FF media time. Frames are only bounded once a rate is known.
struct Timecode {
  std::int64_t hours = 0;
  int minutes = 0;
  int seconds = 0;
  std::int64_t frames = 0;

  auto operator<=>(const Timecode&) const = default;
};

/// Zero-padded "HH:MM:SS:FF".
std::string render(const Timecode& tc);

/// Throws Error (TimecodeSyntax, FieldRange).
Timecode parse_timecode(std::string_view text);

/// ((h*60+m)*60+s)*rate + f. Throws Error (FrameFieldExceedsRate, FieldRange
/// for rate < 1).
std::int64_t timecode_to_frames(const Timecode& tc, int rate);

Timecode timecode_from_frames(std::int64_t frames, int rate);

/// a - b at `rate`. Throws Error (NegativeDuration when a < b).
Timecode timecode_sub(const Timecode& a, const Timecode& b, int rate);

}  // namespace mdf
