// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/hashing.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace uiground {
namespace {

TEST(Fnv1a64Test, PublishedVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Sha256Test, PublishedVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(DeriveSeedTest, StagesAreIndependent) {
  EXPECT_NE(DeriveSeed(7, "taskgen"), DeriveSeed(7, "advgen"));
  EXPECT_NE(DeriveSeed(7, "taskgen"), DeriveSeed(8, "taskgen"));
  EXPECT_EQ(DeriveSeed(7, "taskgen"), DeriveSeed(7, "taskgen"));
}

TEST(RngTest, BelowStaysInRange) {
  Rng rng(1);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(rng.Below(bound), bound);
  }
}

TEST(RngTest, PinnedSequence) {
  // mt19937_64 is fully specified; its 10000th output is 9981545732273789042.
  std::mt19937_64 engine(5489u);
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ULL);
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Below(1000), b.Below(1000));
}

TEST(ShuffleTest, IsAPermutation) {
  for (std::size_t n : {0u, 1u, 2u, 17u, 500u}) {
    auto idx = ShuffledIndices(n, 9);
    std::sort(idx.begin(), idx.end());
    std::vector<std::size_t> want(n);
    std::iota(want.begin(), want.end(), 0);
    EXPECT_EQ(idx, want);
  }
}

TEST(ShuffleTest, DeterministicPerSeed) {
  EXPECT_EQ(ShuffledIndices(50, 3), ShuffledIndices(50, 3));
  EXPECT_NE(ShuffledIndices(50, 3), ShuffledIndices(50, 4));
  std::vector<std::string> items = {"a", "b", "c", "d", "e"};
  auto copy = items;
  DeterministicShuffle(items, 3);
  DeterministicShuffle(copy, 3);
  EXPECT_EQ(items, copy);
}

}  // namespace
}  // namespace uiground
