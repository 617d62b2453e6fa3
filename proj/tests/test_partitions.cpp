#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinfock/partitions.hpp"

using namespace spinfock;

TEST_CASE("enumeration order and classes") {
  auto odd3 = enumerate_partitions(3, PartitionClass::Odd);
  REQUIRE(odd3.size() == 2);
  CHECK(odd3[0] == Partition({3}));
  CHECK(odd3[1] == Partition({1, 1, 1}));

  auto strict4 = enumerate_partitions(4, PartitionClass::Strict);
  REQUIRE(strict4.size() == 2);
  CHECK(strict4[0] == Partition({4}));
  CHECK(strict4[1] == Partition({3, 1}));

  for (auto cls : {PartitionClass::All, PartitionClass::Odd, PartitionClass::Strict}) {
    auto zero = enumerate_partitions(0, cls);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].empty());
    CHECK(zero[0].is_odd());
    CHECK(zero[0].is_strict());
  }

  auto all4 = enumerate_partitions(4);
  REQUIRE(all4.size() == 5);
  CHECK(all4[0] == Partition({4}));
  CHECK(all4[4] == Partition({1, 1, 1, 1}));
  for (size_t i = 1; i < all4.size(); ++i) CHECK(all4[i - 1] < all4[i]);
}

TEST_CASE("euler identity: strict and odd counts agree") {
  for (long d = 0; d <= 20; ++d)
    CHECK(enumerate_partitions(d, PartitionClass::Strict).size() == enumerate_partitions(d, PartitionClass::Odd).size());
}

TEST_CASE("centralizer orders") {
  CHECK(z_aut(Partition({1, 1, 1})) == Rat(6));
  CHECK(z_aut(Partition({3, 1})) == Rat(3));
  CHECK(z_aut(Partition({3, 3})) == Rat(18));
  CHECK(z_aut(Partition()) == Rat(1));
  CHECK(aut_order(Partition()) == Rat(1));
}

TEST_CASE("parity of strict partitions") {
  CHECK(partition_parity(Partition({3, 1})) == 0);
  CHECK(partition_parity(Partition()) == 0);
  CHECK(partition_parity(Partition({5})) == 1);
  CHECK_THROWS_AS(partition_parity(Partition({2, 2})), std::invalid_argument);
}

TEST_CASE("padding with ones") {
  auto r = pad_to_degree(Partition({3}), 4);
  REQUIRE(r.has_value());
  CHECK(r->first == Partition({3, 1}));
  CHECK(r->second == Rat(1));

  r = pad_to_degree(Partition({1}), 3);
  REQUIRE(r.has_value());
  CHECK(r->first == Partition({1, 1, 1}));
  CHECK(r->second == Rat(3));

  CHECK_FALSE(pad_to_degree(Partition({5}), 3).has_value());

  for (long d = 0; d <= 6; ++d)
    for (auto& mu : enumerate_partitions(d)) {
      auto p = pad_to_degree(mu, d);
      REQUIRE(p.has_value());
      CHECK(p->first == mu);
      CHECK(p->second == Rat(1));
    }
}

TEST_CASE("power sums") {
  CHECK(power_sum(Partition({3, 1}), 3) == Rat(28));
  CHECK(power_sum(Partition(), 5) == Rat(0));
  CHECK(power_sum(Partition({3}), 5) == Rat(243));
}
