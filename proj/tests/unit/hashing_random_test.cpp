#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "claimcheck/hashing.hpp"
#include "claimcheck/random.hpp"

using namespace claimcheck;

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Sha256, IncrementalMatchesOneShot) {
  Sha256 h;
  h.update("a").update("bc");
  EXPECT_EQ(h.hex_digest(), sha256_hex("abc"));
}

TEST(Sha256, FieldsAreLengthPrefixed) {
  EXPECT_NE(Sha256{}.field("ab").field("c").hex_digest(), Sha256{}.field("a").field("bc").hex_digest());
}

TEST(IdSetHash, IgnoresOrderAndDuplicates) {
  const std::vector<std::string> a = {"3", "1", "2"};
  const std::vector<std::string> b = {"1", "2", "3", "2"};
  const std::vector<std::string> c = {"1", "2"};
  EXPECT_EQ(id_set_hash(a), id_set_hash(b));
  EXPECT_NE(id_set_hash(a), id_set_hash(c));
}

TEST(Random, Mt19937_64ReferenceOutput) {
  // 10000th output of a default-seeded engine is fixed by the standard.
  std::mt19937_64 engine;
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ull);
}

TEST(Random, StreamsAreIndependentAndStable) {
  EXPECT_EQ(derive_seed(1, "holdout/A"), derive_seed(1, "holdout/A"));
  EXPECT_NE(derive_seed(1, "holdout/A"), derive_seed(1, "holdout/B"));
  EXPECT_NE(derive_seed(1, "holdout/A"), derive_seed(2, "holdout/A"));
}

TEST(Random, UniformBelowStaysInRangeAndCoversIt) {
  auto rng = make_rng(3, "test");
  for (std::uint64_t bound : {1ull, 2ull, 7ull, 1000ull}) {
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 5000; ++i) {
      const auto v = uniform_below(rng, bound);
      ASSERT_LT(v, bound);
      seen.insert(v);
    }
    if (bound <= 7) {
      EXPECT_EQ(seen.size(), bound);
    }
  }
}

TEST(Random, UniformUnitInHalfOpenInterval) {
  auto rng = make_rng(4, "unit");
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform_unit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(Random, ShuffleIsAPermutationAndDeterministic) {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  b = a;
  auto r1 = make_rng(9, "s");
  auto r2 = make_rng(9, "s");
  shuffle(a, r1);
  shuffle(b, r2);
  EXPECT_EQ(a, b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(50);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(sorted, expected);
}
