#include <doctest.h>

#include <cmath>

#include "crystalwalk/errors.hpp"
#include "crystalwalk/markov.hpp"
#include "crystalwalk/spectral.hpp"

using namespace crystalwalk;

namespace {

WalkModel gl2_model(double t = 3.0 / 7.0) {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::A, 1), 0);
  const std::vector<double> ts{t};
  return WalkModel(spectral_params(c, ts));
}

}  // namespace

TEST_CASE("t and x round trip") {
  for (auto [type, rank] : {std::pair{CartanType::A, 2}, {CartanType::B, 3}, {CartanType::C, 2}, {CartanType::D, 4}}) {
    const auto rs = RootSystem::build(type, rank);
    std::vector<double> t;
    for (int i = 0; i < rank; ++i) t.push_back(0.3 + 0.1 * i);
    const auto log_x = solve_log_x(*rs, t);
    const auto back = t_from_log_x(*rs, log_x);
    for (int i = 0; i < rank; ++i) CHECK(back[i] == doctest::Approx(t[i]).epsilon(1e-12));
  }
}

TEST_CASE("letter law sums to one and the drift inverts") {
  const auto c = minuscule_crystal(RootSystem::build(CartanType::C, 2), 0);
  const std::vector<double> m{0.4, 0.2};
  const auto t = t_from_drift(c, m);
  CHECK(t[0] == doctest::Approx(2.0 / 3.0));
  CHECK(t[1] == doctest::Approx(0.375));
  const auto p = spectral_params(c, t);
  double total = 0.0;
  for (double q : p.letter_probs) total += q;
  CHECK(total == doctest::Approx(1.0));
  CHECK(p.drift[0] == doctest::Approx(0.4));
  CHECK(p.drift[1] == doctest::Approx(0.2));
  const std::vector<double> off_wall{0.4, 0.4};
  CHECK_THROWS_AS(t_from_drift(c, off_wall), DomainError);
}

TEST_CASE("Weyl character at x = 1 is the dimension") {
  const auto rs = RootSystem::build(CartanType::B, 3);
  const std::vector<double> zero(3, 0.0);
  CHECK(weyl_character(*rs, rs->fundamental_weights()[1], zero) == doctest::Approx(21.0));
}

TEST_CASE("gl2 kernel examples") {
  const WalkModel model = gl2_model();
  CHECK(model.params().x[0] == doctest::Approx(0.7));
  CHECK(model.params().x[1] == doctest::Approx(0.3));
  const Window w = dominant_window(model, model.root_system().zero(), 6);
  const auto H = kernel_H(model, w);
  // s_(2,0)(x) / (s_(1,0)(x) s_delta(x)) = 0.49 + 0.21 + 0.09
  CHECK(H.entry(Weight::from_ints({1, 0}), Weight::from_ints({2, 0})) == doctest::Approx(0.79));
  CHECK(H.entry(Weight::from_ints({1, 0}), Weight::from_ints({1, 1})) == doctest::Approx(0.21));
  const auto WC = restrict_to_chamber(kernel_W(model, w), model.root_system());
  CHECK(WC.row(model.root_system().zero())->sum() == doctest::Approx(model.params().x[0]));
  CHECK(WC.kind == KernelKind::Substochastic);
}

TEST_CASE("gl2 exit probability is the gambler's ruin value") {
  const WalkModel model = gl2_model();
  CHECK(exit_probability(model, model.root_system().zero()) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  const auto s = survival_dp(model, model.root_system().zero(), 400);
  CHECK(s[1] == doctest::Approx(0.7));
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k] <= s[k - 1] * (1 + 1e-12));
  CHECK(s.back() == doctest::Approx(4.0 / 7.0).epsilon(1e-6));
  // from (1, 0) the walk must take two net down steps: 1 - (3/7)^2
  CHECK(exit_probability(model, Weight::from_ints({1, 0})) == doctest::Approx(1.0 - 9.0 / 49.0));
}

TEST_CASE("exit probability needs t below one and a dominant start") {
  CHECK_THROWS_AS(exit_probability(gl2_model(1.0), Weight::from_ints({0, 0})), DomainError);
  CHECK_THROWS_AS(exit_probability(gl2_model(1.5), Weight::from_ints({0, 0})), DomainError);
  CHECK_THROWS_AS(exit_probability(gl2_model(), Weight::from_ints({0, 1})), DomainError);
}

TEST_CASE("Doob and intertwining residuals are at rounding level") {
  const auto d4 = RootSystem::build(CartanType::D, 4);
  const std::vector<double> t(4, 0.5);
  const WalkModel model(spectral_params(minuscule_crystal(d4, 3), t));
  const Window w = dominant_window_with_size(model, 30);
  CHECK(check_doob(model, w).max_residual < 1e-12);
  CHECK(check_intertwining(model, w).max_residual < 1e-10);
  CHECK(check_psi_harmonic(model, w).max_residual < 1e-10);
}

TEST_CASE("non-minuscule letters break the Doob relation at the origin") {
  const auto b2 = RootSystem::build(CartanType::B, 2);
  const HighestWordBuilder builder(b2);
  const auto letters = builder.extract(b2->fundamental_weights()[0]).to_table();
  const std::vector<double> t{0.5, 0.5};
  const WalkModel model(spectral_params(letters, t));
  CHECK_FALSE(model.minuscule_type());
  const auto obs = doob_obstruction_at_origin(model);
  CHECK(obs.witnessed);
  CHECK(obs.restricted_w_00 > 0.1);
  CHECK(obs.h_00 == 0.0);
  CHECK_THROWS_AS(exit_probability(model, b2->zero()), NotMinusculeError);
}

TEST_CASE("minuscule type sums") {
  const auto d4 = RootSystem::build(CartanType::D, 4);
  const std::vector<int> idx{0, 2, 3};
  CHECK(minuscule_type_crystal(d4, idx)->size() == 24);
  const auto c3 = RootSystem::build(CartanType::C, 3);
  const std::vector<int> two{0, 1};
  try {
    minuscule_type_crystal(c3, two);
    FAIL("expected NotMinusculeError");
  } catch (const NotMinusculeError& e) {
    CHECK(std::string(e.what()).find("table") != std::string::npos);
  }
  const auto a3 = RootSystem::build(CartanType::A, 3);
  const std::vector<int> a_idx{0, 2};
  CHECK(minuscule_type_crystal(a3, a_idx)->size() == 8);
}

TEST_CASE("type A gauge invariance") {
  const auto a3 = RootSystem::build(CartanType::A, 3);
  const auto c = minuscule_crystal(a3, 1);
  const std::vector<double> t{0.3, 0.6, 0.45};
  const WalkModel sum_one(spectral_params(c, t, Gauge::SumOne));
  const WalkModel first_one(spectral_params(c, t, Gauge::FirstOne));
  CHECK(first_one.params().x[0] == doctest::Approx(1.0));
  double total = 0.0;
  for (double v : sum_one.params().x) total += v;
  CHECK(total == doctest::Approx(1.0));
  for (std::size_t b = 0; b < c->size(); ++b) {
    CHECK(sum_one.params().letter_probs[b] == doctest::Approx(first_one.params().letter_probs[b]).epsilon(1e-12));
  }
  const Window w = dominant_window(sum_one, a3->zero(), 5);
  const auto h1 = kernel_H(sum_one, w);
  const auto h2 = kernel_H(first_one, w);
  for (const auto& row : h1.rows()) {
    for (const auto& e : row.entries) CHECK(std::abs(e.p - h2.entry(row.from, e.to)) < 1e-12);
  }
  const Weight lambda = Weight::from_ints({3, 2, 1, 0});
  const Weight mu = Weight::from_ints({2, 2, 2, 0});
  CHECK(sum_one.psi(lambda) / sum_one.psi(mu) ==
        doctest::Approx(first_one.psi(lambda) / first_one.psi(mu)).epsilon(1e-12));
}
