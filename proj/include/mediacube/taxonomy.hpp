#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mediacube {

enum class Medium { Text, Image, Sound };

std::string_view medium_name(Medium m) noexcept;
std::optional<Medium> parse_medium(std::string_view token) noexcept;

inline constexpr std::array<Medium, 3> kAllMedia{Medium::Text, Medium::Image, Medium::Sound};

struct MediaPresence {
  bool text = false;
  bool image = false;
  bool sound = false;

  bool has(Medium m) const noexcept;
  bool any() const noexcept { return text || image || sound; }

  friend bool operator==(const MediaPresence&, const MediaPresence&) = default;
};

// The enumerator values follow the multimedia-forms table: bit 4 = text,
// bit 2 = sound, bit 1 = image, so the value is also the table row number.
enum class MediaClass : unsigned char {
  Image = 1,
  Sound = 2,
  ImageSound = 3,
  Text = 4,
  TextImage = 5,
  TextSound = 6,
  TextImageSound = 7,
};

inline constexpr std::array<MediaClass, 7> kAllMediaClasses{
    MediaClass::Image,     MediaClass::Sound,     MediaClass::ImageSound,    MediaClass::Text,
    MediaClass::TextImage, MediaClass::TextSound, MediaClass::TextImageSound};

/// Throws Error(AllAbsent) for the all-false triple.
MediaClass classify(const MediaPresence& p);

MediaPresence decompose(MediaClass c) noexcept;

/// True iff every medium present in `b` is also present in `a`.
bool subsumes(MediaClass a, MediaClass b) noexcept;

/// Lowercase hyphenated token, e.g. "text-image-sound".
std::string_view class_token(MediaClass c) noexcept;

/// Inverse of class_token; throws Error(MalformedValue) on an unknown token.
MediaClass parse_class_token(std::string_view token);

}  // namespace mediacube
