#include <doctest.h>

#include "otindex/error.hpp"
#include "otindex/text.hpp"

using namespace otindex;

TEST_SUITE("text_corpus") {

TEST_CASE("preprocess strips headers and newlines and uppercases") {
  CHECK(preprocess_fasta(">h1\nacgT\nACG\n") == "ACGTACG");
  CHECK(preprocess_fasta("ACGT") == "ACGT");
  CHECK(preprocess_fasta(">h\r\nac\r\ngt\r\n") == "ACGT");
  CHECK(preprocess_fasta(">a\nAC\n>b\nGT") == "ACGT");
}

TEST_CASE("preprocess rejects empty sequences") {
  try {
    preprocess_fasta(">h1\n>h2\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptySequence);
    CHECK(std::string(e.what()) == "empty sequence");
  }
  CHECK_THROWS_AS(preprocess_fasta(""), Error);
  CHECK_THROWS_AS(preprocess_fasta("\n\n"), Error);
}

TEST_CASE("preprocess is idempotent") {
  const auto once = preprocess_fasta(">x\nacgtn\nNNac\n");
  CHECK(preprocess_fasta(once) == once);
}

TEST_CASE("sentinel is appended and sorts first") {
  const auto t = Text::with_sentinel("ACGT");
  CHECK(t.n() == 4);
  CHECK(t.size() == 5);
  CHECK(t.display() == "ACGT$");
  CHECK(t[4] == Text::kSentinel);
  CHECK(t.body() == "ACGT");
  const auto b = Text::with_sentinel("BANANA");
  CHECK(b.n() == 6);
  CHECK(b.display() == "BANANA$");
  for (Pos i = 0; i < b.n(); ++i) CHECK(static_cast<unsigned char>(b[i]) > static_cast<unsigned char>(Text::kSentinel));
}

TEST_CASE("sentinel errors") {
  std::string all;
  for (int c = 0; c < 256; ++c) all.push_back(static_cast<char>(c));
  try {
    Text::with_sentinel(all);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlphabetExhausted);
    CHECK(std::string(e.what()) == "alphabet exhausted");
  }
  CHECK_THROWS_AS(Text::with_sentinel(""), Error);
}

TEST_CASE("alphabet") {
  const auto a = alphabet(Text::with_sentinel("BANANA"));
  CHECK(a.size() == 3);
  CHECK(a.size_with_sentinel() == 4);
  CHECK(a.symbols == std::vector<unsigned char>{'A', 'B', 'N'});
  CHECK(alphabet(Text::with_sentinel("AAAA")).size() == 1);
}

TEST_CASE("hash follows content") {
  CHECK(Text::with_sentinel("ACGT").hash() == Text::with_sentinel("ACGT").hash());
  CHECK(Text::with_sentinel("ACGT").hash() != Text::with_sentinel("ACGA").hash());
  // FNV-1a 64 reference value for the empty string.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

}
