#include "doctest.h"

#include "mediacube/error.hpp"
#include "mediacube/taxonomy.hpp"

using namespace mediacube;

TEST_CASE("classify maps table rows to classes") {
  CHECK(classify({true, false, false}) == MediaClass::Text);             // Book
  CHECK(classify({true, true, true}) == MediaClass::TextImageSound);     // Commented Video
  CHECK(classify({false, true, false}) == MediaClass::Image);            // Paints
  CHECK(classify({false, false, true}) == MediaClass::Sound);            // Music
  CHECK(classify({false, true, true}) == MediaClass::ImageSound);        // Video
  CHECK(classify({true, true, false}) == MediaClass::TextImage);         // Commented image
  CHECK(classify({true, false, true}) == MediaClass::TextSound);         // Advertisement
}

TEST_CASE("classify rejects the empty triple") {
  try {
    classify({false, false, false});
    FAIL("expected AllAbsent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllAbsent);
  }
}

TEST_CASE("decompose examples") {
  CHECK(decompose(MediaClass::ImageSound) == MediaPresence{false, true, true});
  CHECK(decompose(MediaClass::Sound) == MediaPresence{false, false, true});
  CHECK(decompose(MediaClass::TextImageSound) == MediaPresence{true, true, true});
}

TEST_CASE("classify and decompose are inverse bijections") {
  for (MediaClass c : kAllMediaClasses) CHECK(classify(decompose(c)) == c);

  int seen = 0;
  for (int bits = 1; bits < 8; ++bits) {
    MediaPresence p{(bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
    CHECK(decompose(classify(p)) == p);
    ++seen;
  }
  CHECK(seen == 7);
}

TEST_CASE("subsumes examples") {
  CHECK(subsumes(MediaClass::TextImageSound, MediaClass::Image));
  CHECK_FALSE(subsumes(MediaClass::Text, MediaClass::Sound));
  CHECK(subsumes(MediaClass::TextImage, MediaClass::Text));
  CHECK_FALSE(subsumes(MediaClass::Text, MediaClass::TextImage));
}

TEST_CASE("subsumes is a partial order with the full class on top") {
  // Reference: set inclusion over the decomposed triples.
  auto included = [](MediaClass a, MediaClass b) {
    MediaPresence pa = decompose(a), pb = decompose(b);
    return (!pb.text || pa.text) && (!pb.image || pa.image) && (!pb.sound || pa.sound);
  };
  for (MediaClass a : kAllMediaClasses) {
    CHECK(subsumes(a, a));
    CHECK(subsumes(MediaClass::TextImageSound, a));
    for (MediaClass b : kAllMediaClasses) {
      CHECK(subsumes(a, b) == included(a, b));
      if (subsumes(a, b) && subsumes(b, a)) CHECK(a == b);
      for (MediaClass c : kAllMediaClasses)
        if (subsumes(a, b) && subsumes(b, c)) CHECK(subsumes(a, c));
    }
  }
}

TEST_CASE("class tokens") {
  CHECK(class_token(MediaClass::TextImageSound) == "text-image-sound");
  CHECK(class_token(MediaClass::ImageSound) == "image-sound");
  for (MediaClass c : kAllMediaClasses) CHECK(parse_class_token(class_token(c)) == c);
  CHECK_THROWS_AS(parse_class_token("TextImage"), Error);
  CHECK_THROWS_AS(parse_class_token("image-text"), Error);
}
