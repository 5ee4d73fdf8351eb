#include "crystalwalk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "crystalwalk/errors.hpp"

namespace crystalwalk {

namespace {

bool strings_of_length_one(const CrystalTable& c) {
  for (Vertex b = 0; b < c.size(); ++b) {
    for (int i = 0; i < c.rank(); ++i) {
      if (c.eps(b, i) + c.phi(b, i) > 1) return false;
    }
  }
  return true;
}

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

LetterSampler::LetterSampler(std::span<const double> probs) {
  if (probs.empty()) throw DomainError("cannot sample from an empty alphabet");
  double acc = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw DomainError("letter probabilities must be nonnegative");
    acc += p;
    cdf_.push_back(acc);
  }
  for (double& c : cdf_) c /= acc;
  cdf_.back() = 1.0;
}

Vertex LetterSampler::operator()(std::mt19937_64& rng) const {
  const double u = uniform53(rng);
  return static_cast<Vertex>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
}

PitmanChain::PitmanChain(const RootSystem& rs) : rs_(&rs) {
  // Reduced word of w0: reflect rho until it is antidominant.
  Weight v = rs.rho();
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < rs.rank(); ++i) {
      if (rs.pairing_int(v, i) > 0) {
        v = rs.reflect(v, i);
        word_.push_back(i);
        moved = true;
        break;
      }
    }
  }
  minima_.assign(word_.size(), 0);
}

Weight PitmanChain::push(const Weight& w) {
  Weight cur = w;
  for (std::size_t k = 0; k < word_.size(); ++k) {
    const int i = word_[k];
    minima_[k] = std::min(minima_[k], rs_->pairing_int(cur, i));
    if (minima_[k] < 0) cur = cur + (-minima_[k]) * rs_->simple_roots()[i];
  }
  return cur;
}

Trajectory sample_trajectory(const SpectralParams& params, int ell, std::uint64_t seed, int checkpoint_every) {
  if (ell < 0) throw DomainError("trajectory length must be nonnegative");
  if (checkpoint_every < 1) throw DomainError("checkpoint cadence must be positive");
  const CrystalTable& c = *params.crystal;
  const RootSystem& rs = c.root_system();
  const bool minuscule = strings_of_length_one(c);
  const LetterSampler sampler(params.letter_probs);
  std::mt19937_64 rng(seed);

  Trajectory tr;
  tr.seed = seed;
  tr.letters.reserve(ell);
  tr.W_path.reserve(ell + 1);
  tr.H_path.reserve(ell + 1);
  Weight w = rs.zero();
  tr.W_path.push_back(w);
  tr.H_path.push_back(w);
  PitmanChain chain(rs);
  chain.push(w);
  Signature sig;
  bool all_dominant = true;

  for (int k = 1; k <= ell; ++k) {
    const Vertex a = sampler(rng);
    tr.letters.push_back(a);
    w = w + c.weight(a);
    tr.W_path.push_back(w);
    sig = append_letter(c, sig, a);
    all_dominant = all_dominant && rs.is_dominant(w);
    if (minuscule && sig.highest(c.rank()) != all_dominant) tr.prefix_criterion_ok = false;

    Weight h;
    if (minuscule) {
      h = chain.push(w);
    } else {
      h = word_weight(c, pitman_transform(c, tr.letters));
    }
    tr.H_path.push_back(h);
    if (k % checkpoint_every == 0 || k == ell) {
      tr.checkpoints.push_back(static_cast<std::size_t>(k));
      if (minuscule && word_weight(c, pitman_transform(c, tr.letters)) != h) tr.coupling_ok = false;
    }
  }
  return tr;
}

unsigned resolve_threads(unsigned threads) noexcept {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::uint64_t n, unsigned threads, const std::function<void(std::uint64_t, unsigned)>& fn) {
  const unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n, 1)));
  if (t == 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (unsigned id = 0; id < t; ++id) {
    pool.emplace_back([&, id] {
      try {
        for (std::uint64_t i = id; i < n; i += t) fn(i, id);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double HKernelEstimate::fraction_within_3sigma() const {
  return entries.empty() ? 0.0 : static_cast<double>(within_3sigma) / static_cast<double>(entries.size());
}

HKernelEstimate estimate_H_kernel(const WalkModel& model, std::size_t n_traj, int ell, std::uint64_t master_seed,
                                  std::size_t min_visits, unsigned threads) {
  using Counts = std::map<Weight, std::map<Weight, std::uint64_t>>;
  const unsigned t = resolve_threads(threads);
  std::vector<Counts> partial(t);
  std::vector<char> coupling(t, 1);
  parallel_for(n_traj, t, [&](std::uint64_t i, unsigned id) {
    const Trajectory tr = sample_trajectory(model.params(), ell, trajectory_seed(master_seed, i));
    if (!tr.coupling_ok) coupling[id] = 0;
    for (int k = 0; k < ell; ++k) ++partial[id][tr.H_path[k]][tr.H_path[k + 1]];
  });

  HKernelEstimate out;
  for (unsigned id = 0; id < t; ++id) {
    out.coupling_ok = out.coupling_ok && coupling[id];
    for (const auto& [from, row] : partial[id]) {
      for (const auto& [to, n] : row) out.transitions[from][to] += n;
    }
  }
  const double log_sd = std::log(model.params().s_delta);
  for (const auto& [from, row] : out.transitions) {
    std::uint64_t visits = 0;
    for (const auto& [to, n] : row) visits += n;
    if (visits < min_visits) {
      ++out.states_dropped;
      continue;
    }
    std::map<Weight, double> exact;
    const double log_smu = model.log_s(from);
    for (const auto& [lambda, m] : model.tensor_multiplicities(from)) {
      exact[lambda] = m.get_d() * std::exp(model.log_s(lambda) - log_sd - log_smu);
    }
    for (const auto& [to, n] : row) exact.try_emplace(to, 0.0);
    for (const auto& [to, p] : exact) {
      KernelComparisonEntry e;
      e.from = from;
      e.to = to;
      const auto it = row.find(to);
      e.count = it == row.end() ? 0 : it->second;
      e.visits = visits;
      e.empirical = static_cast<double>(e.count) / static_cast<double>(visits);
      e.exact = p;
      const double var = p * (1.0 - p) / static_cast<double>(visits);
      const double diff = std::abs(e.empirical - p);
      if (var > 0.0) {
        e.z = diff / std::sqrt(var);
      } else {
        e.z = diff > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
      }
      out.max_z = std::max(out.max_z, e.z);
      if (e.z <= 3.0) ++out.within_3sigma;
      out.entries.push_back(e);
    }
  }
  return out;
}

ExitEstimate exit_probability_mc(const SpectralParams& params, const Weight& lambda, int horizon, std::uint64_t n,
                                 std::uint64_t master_seed, unsigned threads) {
  const CrystalTable& c = *params.crystal;
  const RootSystem& rs = c.root_system();
  if (horizon < 0) throw DomainError("horizon must be nonnegative");
  if (n == 0) throw DomainError("need at least one trajectory");
  if (!rs.is_dominant(lambda)) throw DomainError("start " + lambda.to_string() + " is not dominant");
  const int rank = rs.rank();
  std::vector<int> label_steps(c.size() * rank);
  for (Vertex b = 0; b < c.size(); ++b) {
    for (int i = 0; i < rank; ++i) label_steps[b * rank + i] = rs.pairing_int(c.weight(b), i);
  }
  const std::vector<int> start = rs.dynkin_labels(lambda);
  const LetterSampler sampler(params.letter_probs);
  const unsigned t = resolve_threads(threads);
  std::vector<std::uint64_t> survivors(t, 0);
  parallel_for(n, t, [&](std::uint64_t i, unsigned id) {
    std::mt19937_64 rng(trajectory_seed(master_seed, i));
    std::vector<int> labels(start);
    for (int k = 0; k < horizon; ++k) {
      const int* d = &label_steps[sampler(rng) * rank];
      bool alive = true;
      for (int j = 0; j < rank; ++j) {
        labels[j] += d[j];
        alive = alive && labels[j] >= 0;
      }
      if (!alive) return;
    }
    ++survivors[id];
  });
  ExitEstimate out;
  out.n = n;
  out.horizon = horizon;
  for (auto s : survivors) out.survivors += s;
  out.estimate = static_cast<double>(out.survivors) / static_cast<double>(n);
  out.sigma = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(n));
  return out;
}

}  // namespace crystalwalk
