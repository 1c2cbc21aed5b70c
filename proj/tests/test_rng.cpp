#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "sarcbench/rng.hpp"

using namespace sarcbench;

TEST_CASE("splitmix64 matches the published reference stream") {
    SplitMix64 sm(0);
    CHECK(sm.next() == 0xe220a8397b1dcdafULL);
    CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(sm.next() == 0x06c45d188009454fULL);

    SplitMix64 sm42(42);
    CHECK(sm42.next() == 0xbdd732262feb6e95ULL);
    CHECK(sm42.next() == 0x28efe333b266f103ULL);
}

TEST_CASE("xoshiro256** is a pure function of its seed") {
    Xoshiro256ss a(42);
    Xoshiro256ss b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    Xoshiro256ss c(42);
    CHECK(c.next() == 0x15780b2e0c2ec716ULL);
    CHECK(c.next() == 0x6104d9866d113a7eULL);
    CHECK(c.next() == 0xae17533239e499a1ULL);

    Xoshiro256ss d(43);
    Xoshiro256ss e(42);
    CHECK(d.next() != e.next());
}

TEST_CASE("bounded draws stay in range and cover all residues") {
    Xoshiro256ss rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 4000; ++i) {
        const std::uint64_t v = rng.bounded(10);
        CHECK(v < 10);
        seen.insert(v);
    }
    CHECK(seen.size() == 10);

    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 1000003ULL}) {
        for (int i = 0; i < 50; ++i) CHECK(rng.bounded(n) < n);
    }
}

TEST_CASE("bounded draws are close to uniform") {
    Xoshiro256ss rng(1234);
    const int draws = 100000;
    std::vector<int> bucket(8, 0);
    for (int i = 0; i < draws; ++i) ++bucket[rng.bounded(8)];
    for (int count : bucket) {
        CHECK(count > draws / 8 - 600);
        CHECK(count < draws / 8 + 600);
    }
}

TEST_CASE("shuffle permutes and depends only on the seed") {
    std::vector<std::uint32_t> items(50);
    for (std::uint32_t i = 0; i < 50; ++i) items[i] = i;

    std::vector<std::uint32_t> first = items;
    Xoshiro256ss rng1(9);
    shuffle(std::span<std::uint32_t>(first), rng1);

    std::vector<std::uint32_t> second = items;
    Xoshiro256ss rng2(9);
    shuffle(std::span<std::uint32_t>(second), rng2);
    CHECK(first == second);

    std::vector<std::uint32_t> sorted = first;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == items);
    CHECK(first != items);  // 50! leaves no realistic chance of identity
}

TEST_CASE("sample_without_replacement draws distinct in-range indices") {
    Xoshiro256ss rng(7);
    const auto picked = sample_without_replacement(10, 3, rng);
    CHECK(picked == std::vector<std::uint32_t>{7, 3, 8});  // independent reimplementation

    Xoshiro256ss rng8(8);
    CHECK(sample_without_replacement(10, 3, rng8) == std::vector<std::uint32_t>{8, 6, 1});

    Xoshiro256ss big(5);
    const auto sample = sample_without_replacement(1000, 400, big);
    std::set<std::uint32_t> distinct(sample.begin(), sample.end());
    CHECK(distinct.size() == 400);
    for (std::uint32_t v : sample) CHECK(v < 1000);
}

TEST_CASE("longer samples extend shorter ones drawn from the same seed") {
    Xoshiro256ss a(11);
    Xoshiro256ss b(11);
    const auto small = sample_without_replacement(100, 20, a);
    const auto large = sample_without_replacement(100, 60, b);
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
}

TEST_CASE("full-length sample is a permutation") {
    Xoshiro256ss rng(42);
    const auto all = sample_without_replacement(10, 10, rng);
    CHECK(all == std::vector<std::uint32_t>{0, 4, 7, 9, 3, 8, 5, 1, 2, 6});
    std::set<std::uint32_t> distinct(all.begin(), all.end());
    CHECK(distinct.size() == 10);
}
