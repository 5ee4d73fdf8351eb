#include <doctest.h>

#include "crystalwalk/errors.hpp"
#include "crystalwalk/root_system.hpp"

using namespace crystalwalk;

TEST_CASE("Weyl group orders") {
  CHECK(weyl_group_order(CartanType::A, 3) == 24);
  CHECK(weyl_group_order(CartanType::B, 3) == 48);
  CHECK(weyl_group_order(CartanType::C, 2) == 8);
  CHECK(weyl_group_order(CartanType::D, 4) == 192);
  for (auto [type, rank] : {std::pair{CartanType::A, 2}, {CartanType::B, 2}, {CartanType::C, 3}, {CartanType::D, 4}}) {
    const auto rs = RootSystem::build(type, rank);
    CHECK(rs->weyl_elements().size() == weyl_group_order(type, rank));
  }
}

TEST_CASE("positive root counts") {
  CHECK(RootSystem::build(CartanType::A, 3)->positive_roots().size() == 6);
  CHECK(RootSystem::build(CartanType::B, 3)->positive_roots().size() == 9);
  CHECK(RootSystem::build(CartanType::C, 3)->positive_roots().size() == 9);
  CHECK(RootSystem::build(CartanType::D, 4)->positive_roots().size() == 12);
}

TEST_CASE("fundamental weights pair to the identity") {
  for (auto [type, rank] : {std::pair{CartanType::A, 3}, {CartanType::B, 3}, {CartanType::C, 3}, {CartanType::D, 4}}) {
    const auto rs = RootSystem::build(type, rank);
    for (int j = 0; j < rank; ++j) {
      for (int i = 0; i < rank; ++i) CHECK(rs->pairing_int(rs->fundamental_weights()[j], i) == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("Weyl dimensions of small representations") {
  const auto c3 = RootSystem::build(CartanType::C, 3);
  CHECK(c3->weyl_dimension(c3->fundamental_weights()[1]) == 14);
  CHECK(c3->weyl_dimension(c3->fundamental_weights()[0]) == 6);
  const auto b3 = RootSystem::build(CartanType::B, 3);
  CHECK(b3->weyl_dimension(b3->fundamental_weights()[2]) == 8);
  CHECK(b3->weyl_dimension(b3->fundamental_weights()[0]) == 7);
  const auto d4 = RootSystem::build(CartanType::D, 4);
  for (int i : {0, 2, 3}) CHECK(d4->weyl_dimension(d4->fundamental_weights()[i]) == 8);
  CHECK(d4->weyl_dimension(d4->fundamental_weights()[1]) == 28);
  const auto a2 = RootSystem::build(CartanType::A, 2);
  CHECK(a2->weyl_dimension(Weight::from_ints({2, 1, 0})) == 8);
}

TEST_CASE("minuscule table") {
  CHECK(RootSystem::build(CartanType::A, 3)->minuscule_indices() == std::vector<int>{0, 1, 2});
  CHECK(RootSystem::build(CartanType::B, 3)->minuscule_indices() == std::vector<int>{2});
  CHECK(RootSystem::build(CartanType::C, 3)->minuscule_indices() == std::vector<int>{0});
  CHECK(RootSystem::build(CartanType::D, 5)->minuscule_indices() == std::vector<int>{0, 3, 4});
}

TEST_CASE("dominant representative and reflections") {
  const auto rs = RootSystem::build(CartanType::B, 2);
  const Weight w = Weight::from_ints({-1, 3});
  CHECK(rs->dominant_representative(w) == Weight::from_ints({3, 1}));
  CHECK(rs->reflect(rs->reflect(w, 0), 0) == w);
  CHECK(rs->in_root_lattice(Weight::from_ints({1, 0})));
  CHECK_FALSE(rs->in_root_lattice(Weight::from_doubled({1, 1})));
}

TEST_CASE("unsupported types and bad ranks") {
  CHECK_THROWS_AS(parse_cartan_type("G"), UnsupportedTypeError);
  CHECK_THROWS_AS(parse_cartan_type("E"), UnsupportedTypeError);
  CHECK_THROWS_AS(RootSystem::build(CartanType::A, 0), DomainError);
  CHECK_THROWS_AS(RootSystem::build(CartanType::D, 1), DomainError);
  CHECK_THROWS_AS(RootSystem::build(CartanType::C, 9), ResourceLimitError);
}
