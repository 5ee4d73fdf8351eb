#include <doctest.h>

#include "crystalwalk/counting.hpp"

using namespace crystalwalk;

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Standard Young tableaux of a partition, by the hook length formula.
BigInt hook_count(const std::vector<int>& shape) {
  int n = 0;
  for (int r : shape) n += r;
  BigInt hooks = 1;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    for (int j = 0; j < shape[i]; ++j) {
      int below = 0;
      for (std::size_t k = i + 1; k < shape.size(); ++k) below += shape[k] > j ? 1 : 0;
      hooks *= shape[i] - j - 1 + below + 1;
    }
  }
  return factorial(n) / hooks;
}

}  // namespace

TEST_CASE("gl2 counts are ballot numbers") {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::A, 1), 0);
  const auto table = path_count_dp(*c, Weight::from_ints({0, 0}), 20);
  for (int ell = 0; ell <= 20; ++ell) {
    for (int k = 0; 2 * k <= ell; ++k) {
      CHECK(table.at(ell, Weight::from_ints({ell - k, k})) == binomial(ell, k) - binomial(ell, k - 1));
    }
  }
}

TEST_CASE("gl3 counts are standard Young tableaux") {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::A, 2), 0);
  const auto table = path_count_dp(*c, Weight::from_ints({0, 0, 0}), 12);
  for (int ell = 0; ell <= 12; ++ell) {
    for (const auto& [lambda, f] : table.rows[ell]) {
      std::vector<int> shape;
      for (std::size_t k = 0; k < lambda.dim(); ++k) shape.push_back(lambda.doubled(k) / 2);
      CHECK(f == hook_count(shape));
    }
  }
}

TEST_CASE("dynamic programme matches brute force") {
  std::vector<std::pair<CrystalPtr, Weight>> cases;
  const auto c2 = RootSystem::build(CartanType::C, 2);
  cases.emplace_back(minuscule_crystal(c2, 0), Weight::from_ints({1, 0}));
  const auto b3 = RootSystem::build(CartanType::B, 3);
  cases.emplace_back(minuscule_crystal(b3, 2), b3->zero());
  const auto d4 = RootSystem::build(CartanType::D, 4);
  cases.emplace_back(minuscule_crystal(d4, 0), d4->zero());
  const auto a3 = RootSystem::build(CartanType::A, 3);
  cases.emplace_back(minuscule_crystal(a3, 1), Weight::from_ints({1, 0, 0, 0}));
  for (const auto& [c, mu] : cases) {
    const auto table = path_count_dp(*c, mu, 5);
    for (int ell = 0; ell <= 5; ++ell) {
      const auto brute = brute_force_count(*c, mu, ell);
      std::map<Weight, BigInt> dp(table.rows[ell].begin(), table.rows[ell].end());
      std::erase_if(dp, [](const auto& kv) { return sgn(kv.second) == 0; });
      CHECK(dp == brute);
    }
  }
}

TEST_CASE("Catalan numbers on the gl2 diagonal") {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::A, 1), 0);
  const auto table = path_count_dp(*c, Weight::from_ints({0, 0}), 20);
  for (int k = 0; k <= 10; ++k) CHECK(table.at(2 * k, Weight::from_ints({k, k})) == binomial(2 * k, k) / (k + 1));
}

TEST_CASE("Pieri rule for the gl3 vector representation") {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::A, 2), 0);
  const auto m = tensor_multiplicities(Weight::from_ints({2, 1, 0}), *c);
  std::map<Weight, BigInt> expected{{Weight::from_ints({3, 1, 0}), 1}, {Weight::from_ints({2, 2, 0}), 1},
                                    {Weight::from_ints({2, 1, 1}), 1}};
  CHECK(m == expected);
}

TEST_CASE("nearest weight respects the requested coset") {
  const auto rs = RootSystem::build(CartanType::C, 2);
  const std::vector<double> v{3.2, 1.1};
  const Weight any = nearest_weight(*rs, v);
  CHECK(any == Weight::from_ints({3, 1}));
  const Weight odd = nearest_weight(*rs, v, Weight::from_ints({1, 0}));
  CHECK(rs->in_root_lattice(odd - Weight::from_ints({1, 0})));
  CHECK(coset_offset(*rs, Weight::from_ints({2, 1}), Weight::from_ints({1, 0})) == 1);
}
