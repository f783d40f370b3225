#include "mediacube/taxonomy.hpp"

#include <string>

#include "mediacube/error.hpp"

namespace mediacube {

namespace {

constexpr unsigned kTextBit = 4;
constexpr unsigned kSoundBit = 2;
constexpr unsigned kImageBit = 1;

}  // namespace

std::string_view medium_name(Medium m) noexcept {
  switch (m) {
    case Medium::Text: return "text";
    case Medium::Image: return "image";
    case Medium::Sound: return "sound";
  }
  return "";
}

std::optional<Medium> parse_medium(std::string_view token) noexcept {
  for (Medium m : kAllMedia)
    if (medium_name(m) == token) return m;
  return std::nullopt;
}

bool MediaPresence::has(Medium m) const noexcept {
  switch (m) {
    case Medium::Text: return text;
    case Medium::Image: return image;
    case Medium::Sound: return sound;
  }
  return false;
}

MediaClass classify(const MediaPresence& p) {
  unsigned bits = (p.text ? kTextBit : 0u) | (p.sound ? kSoundBit : 0u) | (p.image ? kImageBit : 0u);
  if (bits == 0) throw Error(ErrorCode::AllAbsent, "no text, image or sound present");
  return static_cast<MediaClass>(bits);
}

MediaPresence decompose(MediaClass c) noexcept {
  auto bits = static_cast<unsigned>(c);
  return MediaPresence{(bits & kTextBit) != 0, (bits & kImageBit) != 0, (bits & kSoundBit) != 0};
}

bool subsumes(MediaClass a, MediaClass b) noexcept {
  auto ab = static_cast<unsigned>(a);
  auto bb = static_cast<unsigned>(b);
  return (ab & bb) == bb;
}

std::string_view class_token(MediaClass c) noexcept {
  switch (c) {
    case MediaClass::Text: return "text";
    case MediaClass::Image: return "image";
    case MediaClass::Sound: return "sound";
    case MediaClass::TextImage: return "text-image";
    case MediaClass::TextSound: return "text-sound";
    case MediaClass::ImageSound: return "image-sound";
    case MediaClass::TextImageSound: return "text-image-sound";
  }
  return "";
}

MediaClass parse_class_token(std::string_view token) {
  for (MediaClass c : kAllMediaClasses)
    if (class_token(c) == token) return c;
  throw Error(ErrorCode::MalformedValue, "unknown media class '" + std::string(token) + "'");
}

}  // namespace mediacube
