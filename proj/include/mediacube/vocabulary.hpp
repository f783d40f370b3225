#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace mediacube {

/// A named label set. Closed vocabularies reject unseen labels; open ones
/// accept them and the validator emits a warning.
class ControlledVocabulary {
 public:
  ControlledVocabulary(std::string name, std::initializer_list<std::string_view> members, bool open);

  const std::string& name() const noexcept { return name_; }
  const std::set<std::string, std::less<>>& members() const noexcept { return members_; }
  bool open() const noexcept { return open_; }
  bool contains(std::string_view label) const { return members_.find(label) != members_.end(); }

  void add(std::string label) { members_.insert(std::move(label)); }

 private:
  std::string name_;
  std::set<std::string, std::less<>> members_;
  bool open_;
};

using VocabularySet = std::map<std::string, ControlledVocabulary, std::less<>>;

namespace vocab {
inline constexpr std::string_view kColour = "colour";
inline constexpr std::string_view kShape = "shape";
inline constexpr std::string_view kMedium = "medium";
inline constexpr std::string_view kTarget = "target";
inline constexpr std::string_view kSoundType = "sound_type";
inline constexpr std::string_view kShapeSpecificity = "shape_specificity";
inline constexpr std::string_view kObject = "object";
inline constexpr std::string_view kObjectSpecificity = "object_specificity";
inline constexpr std::string_view kFeature = "feature";
inline constexpr std::string_view kFeatureSubclass = "feature_subclass";
inline constexpr std::string_view kImageType = "image_type";
inline constexpr std::string_view kSoundClass = "sound_class";
inline constexpr std::string_view kSoundSubclass = "sound_subclass";
}  // namespace vocab

/// The built-in vocabularies seeded from the descriptor value lists. Colour,
/// shape, medium, target and sound type are closed; the rest are open.
const VocabularySet& builtin_vocabularies();

}  // namespace mediacube
