#include "mdf/timecode.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

#include "mdf/error.hpp"
#include "text_util.hpp"

namespace mdf {

std::string render(const Timecode& tc) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%02lld:%02d:%02d:%02lld",
                static_cast<long long>(tc.hours), tc.minutes, tc.seconds,
                static_cast<long long>(tc.frames));
  return buf;
}

Timecode parse_timecode(std::string_view text) {
  std::string_view s = detail::trim(text);
  auto syntax = [&] {
    return Error(ErrorCode::TimecodeSyntax,
                 "expected HH:MM:SS:FF, found '" + std::string(s) + "'");
  };
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto colon = s.find(':', start);
    fields.push_back(s.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (fields.size() != 4) throw syntax();
  std::int64_t values[4];
  for (int i = 0; i < 4; ++i) {
    std::string_view f = fields[i];
    // Minutes and seconds are exactly two digits; hours and frames at least two.
    bool width_ok = (i == 1 || i == 2) ? f.size() == 2 : (f.size() >= 2 && f.size() <= 12);
    if (!width_ok) throw syntax();
    for (char c : f) {
      if (!detail::is_digit(c)) throw syntax();
    }
    std::from_chars(f.data(), f.data() + f.size(), values[i]);
  }
  if (values[1] > 59 || values[2] > 59) {
    throw Error(ErrorCode::FieldRange,
                "minutes and seconds must be 00-59 in '" + std::string(s) + "'");
  }
  return Timecode{values[0], static_cast<int>(values[1]), static_cast<int>(values[2]),
                  values[3]};
}

std::int64_t timecode_to_frames(const Timecode& tc, int rate) {
  if (rate < 1) throw Error(ErrorCode::FieldRange, "frame rate must be at least 1");
  if (tc.frames >= rate) {
    throw Error(ErrorCode::FrameFieldExceedsRate,
                "frame field " + std::to_string(tc.frames) + " not below rate " +
                    std::to_string(rate) + " in " + render(tc));
  }
  return ((tc.hours * 60 + tc.minutes) * 60 + tc.seconds) * rate + tc.frames;
}

Timecode timecode_from_frames(std::int64_t frames, int rate) {
  if (rate < 1) throw Error(ErrorCode::FieldRange, "frame rate must be at least 1");
  if (frames < 0) throw Error(ErrorCode::NegativeDuration, "negative frame count");
  Timecode tc;
  tc.frames = frames % rate;
  std::int64_t total_seconds = frames / rate;
  tc.seconds = static_cast<int>(total_seconds % 60);
  tc.minutes = static_cast<int>((total_seconds / 60) % 60);
  tc.hours = total_seconds / 3600;
  return tc;
}

Timecode timecode_sub(const Timecode& a, const Timecode& b, int rate) {
  std::int64_t fa = timecode_to_frames(a, rate);
  std::int64_t fb = timecode_to_frames(b, rate);
  if (fa < fb) {
    throw Error(ErrorCode::NegativeDuration,
                render(a) + " is earlier than " + render(b));
  }
  return timecode_from_frames(fa - fb, rate);
}

}  // namespace mdf
