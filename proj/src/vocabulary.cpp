#include "mediacube/vocabulary.hpp"

namespace mediacube {

ControlledVocabulary::ControlledVocabulary(std::string name,
                                           std::initializer_list<std::string_view> members, bool open)
    : name_(std::move(name)), open_(open) {
  for (auto m : members) members_.emplace(m);
}

namespace {

VocabularySet make_builtins() {
  VocabularySet set;
  auto add = [&](std::string_view name, std::initializer_list<std::string_view> members, bool open) {
    set.emplace(std::string(name), ControlledVocabulary(std::string(name), members, open));
  };
  add(vocab::kColour,
      {"red", "orange", "yellow", "green", "blue", "indigo", "violet", "grey", "black", "white"},
      false);
  add(vocab::kShape,
      {"oval", "circle", "square", "rectangle", "triangle", "cylindrical", "rhombus", "irregular",
       "line"},
      false);
  add(vocab::kMedium, {"wood", "electronic", "paper", "glass", "stone", "plastic", "composite"},
      false);
  add(vocab::kTarget, {"public", "private", "not-specified"}, false);
  add(vocab::kSoundType, {"noise", "music", "voice"}, false);

  add(vocab::kShapeSpecificity, {"repeated", "perfect shape", "deformed", "interposed"}, true);
  add(vocab::kObject, {"equipment", "tool"}, true);
  add(vocab::kObjectSpecificity, {"deformed", "at foreground", "at background"}, true);
  add(vocab::kFeature,
      {"nature", "water body", "sporting", "animal", "human being", "activity"}, true);
  add(vocab::kFeatureSubclass,
      {"animal-mammal", "animal-wild", "animal-domestic", "water-ocean", "activity-war",
       "activity-manufacturing"},
      true);
  add(vocab::kImageType,
      {"water colour", "digital image", "oil colour", "sketch", "humour", "cartoon"}, true);
  add(vocab::kSoundClass, {"debate", "dialogue", "music", "publicity"}, true);
  add(vocab::kSoundSubclass,
      {"country music", "blast noise", "industrial noise", "warning sound", "disorder"}, true);
  return set;
}

}  // namespace

const VocabularySet& builtin_vocabularies() {
  static const VocabularySet set = make_builtins();
  return set;
}

}  // namespace mediacube
