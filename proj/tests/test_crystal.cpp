#include <doctest.h>

#include <random>

#include "crystalwalk/crystal.hpp"
#include "crystalwalk/errors.hpp"

using namespace crystalwalk;

namespace {

std::vector<CrystalPtr> sample_crystals() {
  return {minuscule_crystal(RootSystem::build(CartanType::A, 2), 0),
          minuscule_crystal(RootSystem::build(CartanType::A, 3), 1),
          minuscule_crystal(RootSystem::build(CartanType::C, 3), 0),
          minuscule_crystal(RootSystem::build(CartanType::B, 3), 2),
          minuscule_crystal(RootSystem::build(CartanType::D, 4), 3)};
}

Word random_word(std::mt19937_64& rng, std::size_t alphabet, std::size_t len) {
  Word w(len);
  for (auto& a : w) a = static_cast<Vertex>(rng() % alphabet);
  return w;
}

}  // namespace

TEST_CASE("minuscule crystal sizes match Weyl dimensions") {
  for (const auto& c : sample_crystals()) {
    const auto& rs = c->root_system();
    CHECK(BigInt(static_cast<unsigned long>(c->size())) == rs.weyl_dimension(c->weight(0)));
    CHECK(c->highest_vertices().size() == 1);
  }
}

TEST_CASE("non-minuscule request names the table") {
  const auto b3 = RootSystem::build(CartanType::B, 3);
  try {
    minuscule_crystal(b3, 0);
    FAIL("expected NotMinusculeError");
  } catch (const NotMinusculeError& e) {
    const std::string what = e.what();
    CHECK(what.find("w1 is not minuscule") != std::string::npos);
    CHECK(what.find("B_n w_n") != std::string::npos);
  }
  CHECK_THROWS_AS(minuscule_crystal(RootSystem::build(CartanType::C, 2), 1), NotMinusculeError);
}

TEST_CASE("incremental signature agrees with the tensor rule") {
  std::mt19937_64 rng(99);
  for (const auto& c : sample_crystals()) {
    for (int trial = 0; trial < 200; ++trial) {
      const Word w = random_word(rng, c->size(), 1 + rng() % 12);
      const Signature sig = word_signature(*c, w);
      for (int i = 0; i < c->rank(); ++i) {
        const auto [eps, phi] = tensor_eps_phi(*c, w, i);
        CHECK(sig.eps[i] == eps);
        CHECK(sig.phi[i] == phi);
      }
    }
  }
}

TEST_CASE("highest-weight tests agree") {
  std::mt19937_64 rng(7);
  for (const auto& c : sample_crystals()) {
    for (int trial = 0; trial < 300; ++trial) {
      const Word w = random_word(rng, c->size(), 1 + rng() % 8);
      CHECK(is_highest(*c, w) == is_highest_by_prefix_criterion(*c, w));
      CHECK(is_highest(*c, w) == word_signature(*c, w).highest(c->rank()));
    }
  }
}

TEST_CASE("raising and lowering are inverse and shift the weight by a root") {
  std::mt19937_64 rng(3);
  for (const auto& c : sample_crystals()) {
    const auto& rs = c->root_system();
    for (int trial = 0; trial < 200; ++trial) {
      const Word w = random_word(rng, c->size(), 1 + rng() % 6);
      for (int i = 0; i < c->rank(); ++i) {
        if (auto up = apply_e(*c, w, i)) {
          CHECK(word_weight(*c, *up) == word_weight(*c, w) + rs.simple_roots()[i]);
          CHECK(apply_f(*c, *up, i) == w);
        }
      }
    }
  }
}

TEST_CASE("Pitman transform lands on a highest word of the same component") {
  std::mt19937_64 rng(11);
  for (const auto& c : sample_crystals()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Word w = random_word(rng, c->size(), 1 + rng() % 10);
      const Word top = pitman_transform(*c, w);
      CHECK(is_highest(*c, top));
      CHECK(top.size() == w.size());
      CHECK(c->root_system().is_dominant(word_weight(*c, top)));
    }
  }
}

TEST_CASE("tensor square of the C3 vector representation") {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::C, 3), 0);
  const auto dec = decompose_tensor_power(*c, 2);
  std::map<Weight, BigInt> expected{{Weight::from_ints({2, 0, 0}), 1}, {Weight::from_ints({1, 1, 0}), 1},
                                    {Weight::from_ints({0, 0, 0}), 1}};
  CHECK(dec == expected);
}

TEST_CASE("extracted non-minuscule component has the Weyl dimension") {
  const auto rs = RootSystem::build(CartanType::C, 3);
  const HighestWordBuilder builder(rs);
  const auto e = builder.extract(rs->fundamental_weights()[1]);
  CHECK(e.size() == 14);
  CHECK(e.highest_weight() == rs->fundamental_weights()[1]);
  CHECK_THROWS_AS(builder.extract(Weight::from_ints({30, 20, 10}), 100), ResourceLimitError);
}
