#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "crystalwalk/crystal.hpp"
#include "crystalwalk/markov.hpp"
#include "crystalwalk/spectral.hpp"

namespace crystalwalk {

/// Name recorded in output metadata; bump the suffix if the stream layout changes.
inline constexpr const char* kRngName = "mt19937_64/splitmix64-v1";

std::uint64_t splitmix64(std::uint64_t x) noexcept;
/// Seed of trajectory `index` under `master`: independent of worker count and order.
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Inverse-CDF sampler over the letters of a crystal.
class LetterSampler {
 public:
  explicit LetterSampler(std::span<const double> probs);
  Vertex operator()(std::mt19937_64& rng) const;

 private:
  std::vector<double> cdf_;
};

/// Running generalized Pitman transform of a lattice path with minuscule steps:
/// a chain of one-root Pitman operators over a reduced word of the longest Weyl
/// element, each keeping its running minimum.
class PitmanChain {
 public:
  explicit PitmanChain(const RootSystem& rs);
  /// Feeds the next path point W_l, returns H_l.
  Weight push(const Weight& w);
  const std::vector<int>& reduced_word() const noexcept { return word_; }

 private:
  const RootSystem* rs_;
  std::vector<int> word_;
  std::vector<int> minima_;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<Vertex> letters;
  std::vector<Weight> W_path;  // W_0 = 0, ..., W_l
  std::vector<Weight> H_path;  // H_0 = 0, ..., H_l
  std::vector<std::size_t> checkpoints;
  /// H_path agreed with a from-scratch Pitman transform at every checkpoint.
  bool coupling_ok = true;
  /// Minuscule letters only: prefixes all dominant iff the word is highest at every prefix.
  bool prefix_criterion_ok = true;
};

Trajectory sample_trajectory(const SpectralParams& params, int ell, std::uint64_t seed, int checkpoint_every = 64);

struct KernelComparisonEntry {
  Weight from;
  Weight to;
  std::uint64_t count = 0;
  std::uint64_t visits = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double z = 0.0;  // |empirical - exact| / sqrt(exact (1 - exact) / visits)
};

struct HKernelEstimate {
  std::map<Weight, std::map<Weight, std::uint64_t>> transitions;
  std::vector<KernelComparisonEntry> entries;  // rows with at least min_visits visits
  std::size_t states_dropped = 0;              // rows below min_visits
  std::size_t within_3sigma = 0;
  double max_z = 0.0;
  bool coupling_ok = true;
  double fraction_within_3sigma() const;
};

HKernelEstimate estimate_H_kernel(const WalkModel& model, std::size_t n_traj, int ell, std::uint64_t master_seed,
                                  std::size_t min_visits = 100, unsigned threads = 0);

struct ExitEstimate {
  double estimate = 0.0;
  double sigma = 0.0;
  std::uint64_t survivors = 0;
  std::uint64_t n = 0;
  int horizon = 0;
};

/// Fraction of walks from lambda whose first `horizon` positions are all dominant.
ExitEstimate exit_probability_mc(const SpectralParams& params, const Weight& lambda, int horizon, std::uint64_t n,
                                 std::uint64_t master_seed, unsigned threads = 0);

/// Runs fn(index) for index in [0, n) on `threads` workers (0: hardware concurrency).
void parallel_for(std::uint64_t n, unsigned threads, const std::function<void(std::uint64_t, unsigned)>& fn);
unsigned resolve_threads(unsigned threads) noexcept;

}  // namespace crystalwalk
