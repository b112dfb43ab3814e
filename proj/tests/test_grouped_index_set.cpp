#include <doctest.h>

#include <stdexcept>

#include <set>

#include "ganova/grouped_index_set.hpp"

using namespace ganova;

TEST_CASE("group cardinality") {
  CHECK(group_cardinality({1, 2}, 6) == 25);
  CHECK(group_cardinality({}, 100) == 1);
  CHECK(group_cardinality({}, 0) == 1);
  CHECK_THROWS_AS(group_cardinality({1}, 1), std::invalid_argument);
}

TEST_CASE("total cardinalities of the paper presets") {
  CHECK(GroupedIndexSet::with_order_bandwidths(TermSet::superset(9, 3), {26, 6, 4},
                                               Basis::exponential)
            .total_cardinality() == 3394);
  CHECK(GroupedIndexSet::with_order_bandwidths(TermSet::superset(9, 3), {352, 20, 8},
                                               Basis::exponential)
            .total_cardinality() == 44968);
  CHECK(GroupedIndexSet::with_order_bandwidths(TermSet::superset(12, 2), {82, 10},
                                               Basis::cosine)
            .total_cardinality() == 6319);
  CHECK(GroupedIndexSet::with_order_bandwidths(TermSet::superset(2, 1), {4},
                                               Basis::exponential)
            .total_cardinality() == 7);
}

TEST_CASE("group enumeration") {
  CHECK(enumerate_group({}, 0, Basis::exponential, 3) ==
        std::vector<std::vector<int>>{{0, 0, 0}});
  CHECK(enumerate_group({2}, 4, Basis::exponential, 3) ==
        std::vector<std::vector<int>>{{0, -2, 0}, {0, -1, 0}, {0, 1, 0}});
  CHECK(enumerate_group({1}, 3, Basis::cosine, 2) ==
        std::vector<std::vector<int>>{{1, 0}, {2, 0}});
  CHECK_THROWS_AS(enumerate_group({1}, 5, Basis::exponential, 2), std::invalid_argument);
}

TEST_CASE("odometer order varies the smallest coordinate fastest") {
  const auto freqs = enumerate_group({1, 3}, 4, Basis::exponential, 3);
  REQUIRE(freqs.size() == 9);
  CHECK(freqs[0] == std::vector<int>{-2, 0, -2});
  CHECK(freqs[1] == std::vector<int>{-1, 0, -2});
  CHECK(freqs[2] == std::vector<int>{1, 0, -2});
  CHECK(freqs[3] == std::vector<int>{-2, 0, -1});
  CHECK(freqs[8] == std::vector<int>{1, 0, 1});
}

TEST_CASE("extension index") {
  CHECK(extension_index({1, 3, 8}, {2, 0, -1, 0, 0, 0, 0, 1, 0}) ==
        std::vector<int>{2, -1, 1});
  CHECK(extension_index({}, {0, 0}) == std::vector<int>{});
  CHECK_THROWS_AS(extension_index({1}, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(extension_index({2}, {0, 0}), std::invalid_argument);
}

TEST_CASE("extension and embedding round-trip over a full group") {
  for (Basis basis : {Basis::exponential, Basis::cosine}) {
    const Term u{2, 4};
    const int bandwidth = basis == Basis::exponential ? 6 : 5;
    for (const auto& k : enumerate_group(u, bandwidth, basis, 5)) {
      const auto ku = extension_index(u, k);
      CHECK(embed_index(u, ku, 5) == k);
    }
  }
}

TEST_CASE("groups are disjoint with exact support") {
  for (Basis basis : {Basis::exponential, Basis::cosine}) {
    const auto set = GroupedIndexSet::with_order_bandwidths(
        TermSet::superset(4, 3), basis == Basis::exponential
                                     ? std::vector<int>{6, 4, 4}
                                     : std::vector<int>{5, 3, 3},
        basis);
    std::set<std::vector<int>> seen;
    for (std::size_t g = 0; g < set.group_count(); ++g) {
      const Term& u = set.term_set().term(g);
      for (const auto& k : set.group_frequencies(g)) {
        CHECK(seen.insert(k).second);  // pairwise distinct
        Term support;
        for (std::size_t j = 0; j < k.size(); ++j)
          if (k[j] != 0) support.push_back(static_cast<int>(j) + 1);
        CHECK(support == u);
      }
    }
    CHECK(seen.size() == set.total_cardinality());
  }
}

TEST_CASE("address to flat position is a bijection") {
  const auto set = GroupedIndexSet::with_order_bandwidths(TermSet::superset(3, 2), {6, 4},
                                                          Basis::exponential);
  for (std::size_t flat = 0; flat < set.total_cardinality(); ++flat) {
    const FrequencyAddress address = set.address_of(flat);
    CHECK(set.flat_index(address) == flat);
  }
  CHECK_THROWS_AS(set.address_of(set.total_cardinality()), std::out_of_range);
  CHECK_THROWS_AS(set.flat_index({set.group_count(), 0}), std::out_of_range);
}

TEST_CASE("frequency_at matches group enumeration") {
  const auto set = GroupedIndexSet::with_order_bandwidths(TermSet::superset(3, 2), {4, 4},
                                                          Basis::exponential);
  for (std::size_t g = 0; g < set.group_count(); ++g) {
    const auto freqs = set.group_frequencies(g);
    for (std::size_t i = 0; i < freqs.size(); ++i)
      CHECK(set.frequency_at(set.group_offset(g) + i) == freqs[i]);
  }
}

TEST_CASE("per-term bandwidths are allowed") {
  const TermSet terms(3, {{}, {1}, {2}, {1, 2}});
  const GroupedIndexSet set(terms, {0, 8, 4, 6}, Basis::exponential);
  CHECK(set.total_cardinality() == 1 + 7 + 3 + 25);
  CHECK_THROWS_AS(GroupedIndexSet(terms, {0, 8, 4}, Basis::exponential),
                  std::invalid_argument);
}
