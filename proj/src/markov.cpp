#include "crystalwalk/markov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

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

double log_value(const BigInt& v) { return log_bigint(v); }

// Highest weight of an irreducible letter crystal.
Weight irreducible_highest_weight(const WalkModel& model) {
  const auto tops = model.letters().highest_vertices();
  if (tops.size() != 1) throw DomainError("this computation needs an irreducible letter crystal");
  return model.letters().weight(tops.front());
}

void merge_max(ResidualReport& r, double residual) { r.max_residual = std::max(r.max_residual, residual); }

}  // namespace

double KernelRow::sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.p;
  return s;
}

void TransitionKernel::add_row(KernelRow row) {
  index_[row.from] = rows_.size();
  rows_.push_back(std::move(row));
}

const KernelRow* TransitionKernel::row(const Weight& from) const {
  const auto it = index_.find(from);
  return it == index_.end() ? nullptr : &rows_[it->second];
}

double TransitionKernel::entry(const Weight& from, const Weight& to) const {
  const KernelRow* r = row(from);
  if (!r) return 0.0;
  for (const auto& e : r->entries) {
    if (e.to == to) return e.p;
  }
  return 0.0;
}

std::size_t TransitionKernel::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.entries.size();
  return n;
}

WalkModel::WalkModel(SpectralParams params, std::size_t vertex_budget)
    : params_(std::move(params)),
      rs_(params_.crystal->root_system_ptr()),
      vertex_budget_(vertex_budget),
      builder_(rs_) {
  minuscule_type_ = strings_of_length_one(*params_.crystal);
  std::map<Weight, double> agg;
  for (Vertex b = 0; b < params_.crystal->size(); ++b) agg[params_.crystal->weight(b)] += params_.letter_probs[b];
  steps_.assign(agg.begin(), agg.end());
  counts_ = step_multiset(*params_.crystal);
}

double WalkModel::step_probability(const Weight& beta) const {
  for (const auto& [w, p] : steps_) {
    if (w == beta) return p;
  }
  return 0.0;
}

double WalkModel::log_s(const Weight& lambda) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = log_s_cache_.find(lambda); it != log_s_cache_.end()) return it->second;
  }
  const double v = weyl_character_log(*rs_, lambda, params_.log_x).log_value;
  std::lock_guard lock(mutex_);
  log_s_cache_.emplace(lambda, v);
  return v;
}

double WalkModel::psi(const Weight& lambda) const { return std::exp(log_s(lambda) - lambda.dot(params_.log_x)); }

std::map<Weight, std::uint64_t> WalkModel::weight_multiplicities(const Weight& lambda) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = k_cache_.find(lambda); it != k_cache_.end()) return it->second;
  }
  auto k = builder_.extract(lambda, vertex_budget_).weight_multiplicities();
  std::lock_guard lock(mutex_);
  return k_cache_.emplace(lambda, std::move(k)).first->second;
}

std::map<Weight, BigInt> WalkModel::tensor_multiplicities(const Weight& mu) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = m_cache_.find(mu); it != m_cache_.end()) return it->second;
  }
  auto m = crystalwalk::tensor_multiplicities(mu, *params_.crystal);
  std::lock_guard lock(mutex_);
  return m_cache_.emplace(mu, std::move(m)).first->second;
}

bool Window::interior(const Weight& w) const {
  const auto it = depth.find(w);
  return it != depth.end() && it->second < L;
}

Window dominant_window(const WalkModel& model, const Weight& start, int L) {
  const RootSystem& rs = model.root_system();
  if (!rs.is_dominant(start)) throw DomainError("window start " + start.to_string() + " is not dominant");
  Window w;
  w.L = L;
  w.depth.emplace(start, 0);
  w.states.push_back(start);
  for (std::size_t k = 0; k < w.states.size(); ++k) {
    const Weight cur = w.states[k];
    const int d = w.depth.at(cur);
    if (d == L) continue;
    for (const auto& [beta, p] : model.step_probabilities()) {
      const Weight next = cur + beta;
      if (!rs.is_dominant(next) || w.depth.count(next)) continue;
      w.depth.emplace(next, d + 1);
      w.states.push_back(next);
    }
  }
  return w;
}

Window dominant_window_with_size(const WalkModel& model, std::size_t min_states, int max_L) {
  for (int L = 1; L <= max_L; ++L) {
    Window w = dominant_window(model, model.root_system().zero(), L);
    std::size_t interior = 0;
    for (const auto& s : w.states) interior += w.interior(s) ? 1 : 0;
    if (interior >= min_states) return w;
  }
  throw ResourceLimitError("no window with " + std::to_string(min_states) + " interior states up to L = " +
                           std::to_string(max_L));
}

TransitionKernel kernel_W(const WalkModel& model, const Window& window) {
  const RootSystem& rs = model.root_system();
  TransitionKernel k;
  k.kind = KernelKind::Stochastic;
  for (const auto& from : window.states) {
    KernelRow row;
    row.from = from;
    for (const auto& [beta, p] : model.step_probabilities()) {
      const Weight to = from + beta;
      row.entries.push_back({to, p});
      if (rs.is_dominant(to) && !window.depth.count(to)) row.boundary = true;
    }
    k.add_row(std::move(row));
  }
  return k;
}

TransitionKernel restrict_to_chamber(const TransitionKernel& kernel, const RootSystem& rs) {
  TransitionKernel out;
  out.kind = KernelKind::Substochastic;
  for (const auto& r : kernel.rows()) {
    if (!rs.is_dominant(r.from)) continue;
    KernelRow row;
    row.from = r.from;
    row.boundary = r.boundary;
    for (const auto& e : r.entries) {
      if (rs.is_dominant(e.to)) row.entries.push_back(e);
    }
    out.add_row(std::move(row));
  }
  return out;
}

TransitionKernel kernel_H(const WalkModel& model, const Window& window) {
  TransitionKernel k;
  k.kind = KernelKind::Stochastic;
  const double log_sd = std::log(model.params().s_delta);
  for (const auto& mu : window.states) {
    KernelRow row;
    row.from = mu;
    const double log_smu = model.log_s(mu);
    for (const auto& [lambda, m] : model.tensor_multiplicities(mu)) {
      row.entries.push_back({lambda, m.get_d() * std::exp(model.log_s(lambda) - log_sd - log_smu)});
      if (!window.depth.count(lambda)) row.boundary = true;
    }
    k.add_row(std::move(row));
  }
  return k;
}

TransitionKernel doob_transform(const TransitionKernel& kernel, const std::function<double(const Weight&)>& h) {
  TransitionKernel out;
  out.kind = kernel.kind;
  for (const auto& r : kernel.rows()) {
    const double hf = h(r.from);
    if (!(hf > 0.0)) throw DomainError("h is not positive at " + r.from.to_string());
    KernelRow row;
    row.from = r.from;
    row.boundary = r.boundary;
    for (const auto& e : r.entries) {
      const double ht = h(e.to);
      if (!(ht > 0.0)) throw DomainError("h is not positive at " + e.to.to_string());
      row.entries.push_back({e.to, e.p * ht / hf});
    }
    out.add_row(std::move(row));
  }
  return out;
}

TransitionKernel intertwiner(const WalkModel& model, const Window& window) {
  TransitionKernel k;
  k.kind = KernelKind::Rectangular;
  for (const auto& lambda : window.states) {
    KernelRow row;
    row.from = lambda;
    const double ls = model.log_s(lambda);
    for (const auto& [beta, mult] : model.weight_multiplicities(lambda)) {
      row.entries.push_back({beta, static_cast<double>(mult) * std::exp(beta.dot(model.log_x()) - ls)});
    }
    k.add_row(std::move(row));
  }
  return k;
}

ResidualReport check_intertwining(const WalkModel& model, const Window& window) {
  ResidualReport rep;
  rep.window_states = window.states.size();
  const TransitionKernel H = kernel_H(model, window);
  const TransitionKernel K = intertwiner(model, window);
  for (const auto& lambda : window.states) {
    if (!window.interior(lambda)) {
      ++rep.boundary_rows;
      continue;
    }
    ++rep.rows_checked;
    std::map<Weight, double> lhs, rhs;
    for (const auto& e : H.row(lambda)->entries) {
      const double ls = model.log_s(e.to);
      for (const auto& [beta, mult] : model.weight_multiplicities(e.to)) {
        lhs[beta] += e.p * static_cast<double>(mult) * std::exp(beta.dot(model.log_x()) - ls);
      }
    }
    for (const auto& e : K.row(lambda)->entries) {
      for (const auto& [step, p] : model.step_probabilities()) rhs[e.to + step] += e.p * p;
    }
    for (const auto& [w, v] : lhs) merge_max(rep, std::abs(v - (rhs.count(w) ? rhs.at(w) : 0.0)));
    for (const auto& [w, v] : rhs) {
      if (!lhs.count(w)) merge_max(rep, std::abs(v));
    }
    rep.max_row_sum_error = std::max({rep.max_row_sum_error, std::abs(H.row(lambda)->sum() - 1.0),
                                      std::abs(K.row(lambda)->sum() - 1.0)});
  }
  return rep;
}

ResidualReport check_doob(const WalkModel& model, const Window& window) {
  ResidualReport rep;
  rep.window_states = window.states.size();
  const RootSystem& rs = model.root_system();
  const TransitionKernel H = kernel_H(model, window);
  const TransitionKernel WC = restrict_to_chamber(kernel_W(model, window), rs);
  const TransitionKernel D = doob_transform(WC, [&](const Weight& w) { return model.psi(w); });
  for (const auto& mu : window.states) {
    if (!window.interior(mu)) {
      ++rep.boundary_rows;
      continue;
    }
    ++rep.rows_checked;
    const KernelRow* h = H.row(mu);
    const KernelRow* d = D.row(mu);
    std::set<Weight> support;
    for (const auto& e : h->entries) support.insert(e.to);
    for (const auto& e : d->entries) support.insert(e.to);
    for (const auto& w : support) merge_max(rep, std::abs(H.entry(mu, w) - D.entry(mu, w)));
    rep.max_row_sum_error = std::max(rep.max_row_sum_error, std::abs(d->sum() - 1.0));
  }
  return rep;
}

ResidualReport check_psi_harmonic(const WalkModel& model, const Window& window) {
  ResidualReport rep;
  rep.window_states = window.states.size();
  const RootSystem& rs = model.root_system();
  for (const auto& mu : window.states) {
    if (!window.interior(mu)) {
      ++rep.boundary_rows;
      continue;
    }
    ++rep.rows_checked;
    double s = 0.0;
    for (const auto& [beta, p] : model.step_probabilities()) {
      const Weight to = mu + beta;
      if (rs.is_dominant(to)) s += p * model.psi(to);
    }
    merge_max(rep, std::abs(s - model.psi(mu)));
  }
  return rep;
}

DoobObstruction doob_obstruction_at_origin(const WalkModel& model) {
  DoobObstruction out;
  const Weight zero = model.root_system().zero();
  out.restricted_w_00 = model.step_probability(zero);
  const auto m = model.tensor_multiplicities(zero);
  const auto it = m.find(zero);
  const double mult = it == m.end() ? 0.0 : it->second.get_d();
  out.h_00 = mult / model.params().s_delta;
  out.witnessed = out.restricted_w_00 > 0.0 && out.h_00 == 0.0;
  return out;
}

std::vector<double> law_totals(const WalkModel& model, int L) {
  CountWalk walk(model.root_system_ptr(), model.step_counts(), model.root_system().zero(), BigInt(1));
  const double log_sd = std::log(model.params().s_delta);
  std::vector<double> out;
  for (int ell = 0; ell <= L; ++ell) {
    double total = 0.0;
    walk.for_each([&](const Weight& lambda, const BigInt& f) {
      if (sgn(f) != 0) total += std::exp(log_value(f) + model.log_s(lambda) - ell * log_sd);
    });
    out.push_back(total);
    if (ell < L) walk.advance();
  }
  return out;
}

GreenTable green_truncated(const WalkModel& model, const Weight& mu, int L) {
  GreenTable g;
  g.mu = mu;
  g.L = L;
  const auto& rs = model.root_system_ptr();
  ProbabilityWalk from_mu(rs, model.step_probabilities(), mu, 1.0);
  ProbabilityWalk from_zero(rs, model.step_probabilities(), rs->zero(), 1.0);
  std::map<Weight, double> zero_values;
  for (int ell = 0; ell <= L; ++ell) {
    from_mu.for_each([&](const Weight& w, double p) {
      if (p > 0.0) g.values[w] += p;
    });
    from_zero.for_each([&](const Weight& w, double p) {
      if (p > 0.0) zero_values[w] += p;
    });
    if (ell < L) {
      from_mu.advance();
      from_zero.advance();
    }
  }
  for (const auto& [w, v] : g.values) {
    const auto it = zero_values.find(w);
    if (it != zero_values.end() && it->second > 0.0) g.martin[w] = v / it->second;
  }
  return g;
}

GreenTargets green_at_targets(const WalkModel& model, const Weight& start, std::span<const Weight> targets,
                              double rel_tol, int L_cap) {
  // Increments are compared over a few consecutive lengths: lattice periodicity
  // makes single increments vanish on alternate steps.
  constexpr int kSpan = 4;
  GreenTargets out;
  out.values.assign(targets.size(), 0.0);
  std::vector<std::deque<double>> recent(targets.size());
  ProbabilityWalk walk(model.root_system_ptr(), model.step_probabilities(), start, 1.0);
  for (int ell = 0;; ++ell) {
    bool converged = ell >= kSpan;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double inc = walk.value(targets[k]);
      out.values[k] += inc;
      recent[k].push_back(inc);
      if (recent[k].size() > kSpan) recent[k].pop_front();
      double window = 0.0;
      for (double r : recent[k]) window += r;
      if (!(out.values[k] > 0.0) || window > rel_tol * out.values[k]) converged = false;
    }
    out.L_used = ell;
    if (converged) break;
    if (ell >= L_cap) {
      out.capped = true;
      break;
    }
    walk.advance();
  }
  return out;
}

Weight drift_lattice_point(const WalkModel& model, double a, const std::optional<Weight>& coset_rep) {
  const RootSystem& rs = model.root_system();
  std::vector<double> v(model.params().drift);
  for (double& c : v) c *= a;
  const Weight w = nearest_weight(rs, v, coset_rep);
  return rs.is_dominant(w) ? w : rs.dominant_representative(w);
}

MartinSeries martin_limit_check(const WalkModel& model, const Weight& mu, std::span<const int> ladder) {
  if (!model.minuscule_type()) throw NotMinusculeError("the Martin kernel check needs minuscule letters");
  if (!strictly_dominant_real(model.root_system(), model.params().drift)) {
    throw DomainError("the drift is not inside the open Weyl chamber");
  }
  const Weight delta = irreducible_highest_weight(model);
  coset_offset(model.root_system(), mu, delta);
  MartinSeries out;
  out.mu = mu;
  std::vector<Weight> targets;
  for (int a : ladder) targets.push_back(drift_lattice_point(model, a, a * delta));
  const GreenTargets g0 = green_at_targets(model, model.root_system().zero(), targets);
  const GreenTargets gm = green_at_targets(model, mu, targets);
  out.L_used = std::max(g0.L_used, gm.L_used);
  out.capped = g0.capped || gm.capped;
  const double psi_mu = model.psi(mu);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    MartinPoint p;
    p.a = ladder[k];
    p.lambda = targets[k];
    p.kernel = g0.values[k] > 0.0 ? gm.values[k] / g0.values[k] : 0.0;
    p.psi = psi_mu;
    p.rel_error = std::abs(p.kernel - psi_mu) / psi_mu;
    out.points.push_back(p);
  }
  return out;
}

double exit_probability(const WalkModel& model, const Weight& lambda) {
  if (!model.minuscule_type()) throw NotMinusculeError("the exit probability formula needs minuscule letters");
  if (!all_t_below_one(model.params().t)) {
    throw DomainError("the exit probability formula needs 0 < t_i < 1 for every i (drift inside the chamber)");
  }
  if (!model.root_system().is_dominant(lambda)) throw DomainError("start " + lambda.to_string() + " is not dominant");
  return weyl_alternating_sum(model.root_system(), lambda, model.log_x());
}

std::vector<double> survival_dp(const WalkModel& model, const Weight& lambda, int L) {
  if (!model.minuscule_type()) throw NotMinusculeError("survival from path counts needs minuscule letters");
  CountWalk walk(model.root_system_ptr(), model.step_counts(), lambda, BigInt(1));
  const double log_sd = std::log(model.params().s_delta);
  std::vector<double> out;
  for (int ell = 0; ell <= L; ++ell) {
    double total = 0.0;
    walk.for_each([&](const Weight& mu, const BigInt& f) {
      if (sgn(f) != 0) total += std::exp(log_value(f) + (mu - lambda).dot(model.log_x()) - ell * log_sd);
    });
    out.push_back(total);
    if (ell < L) walk.advance();
  }
  return out;
}

std::vector<RatioPoint> quotient_ratio_checks(const WalkModel& model, QuotientMode mode, std::span<const int> ells,
                                              const Weight& h) {
  const RootSystem& rs = model.root_system();
  if (!model.minuscule_type()) throw NotMinusculeError("quotient ratio checks need minuscule letters");
  const Weight delta = irreducible_highest_weight(model);
  std::vector<RatioPoint> out;
  const bool h_ok = rs.in_root_lattice(h);
  int max_ell = 0;
  for (int ell : ells) {
    RatioPoint p;
    p.ell = ell;
    std::vector<double> v(model.params().drift);
    for (double& c : v) c *= ell;
    p.g = nearest_weight(rs, v, ell * delta);
    if (!h_ok) {
      p.skipped = true;
      p.note = "h = " + h.to_string() + " is not in the lattice generated by step differences";
    } else if (!rs.is_dominant(p.g) || !rs.is_dominant(p.g + h)) {
      p.skipped = true;
      p.note = "g or g + h is not dominant";
    }
    max_ell = std::max(max_ell, ell);
    out.push_back(p);
  }
  const double log_xh = h.dot(model.log_x());
  if (mode == QuotientMode::LocalLimit) {
    CountWalk walk(model.root_system_ptr(), model.step_counts(), rs.zero(), BigInt(1));
    for (int ell = 0; ell <= max_ell; ++ell) {
      for (auto& p : out) {
        if (p.ell != ell || p.skipped) continue;
        const BigInt f0 = walk.value(p.g);
        const BigInt f1 = walk.value(p.g + h);
        if (sgn(f0) == 0 || sgn(f1) == 0) {
          p.skipped = true;
          p.note = "g or g + h is unreachable in l steps";
          continue;
        }
        p.ratio = std::exp(log_value(f1) - log_value(f0) + log_xh);
      }
      if (ell < max_ell) walk.advance();
    }
  } else {
    ProbabilityWalk walk(model.root_system_ptr(), model.step_probabilities(), rs.zero(), 1.0);
    std::vector<double> s0(out.size(), 0.0), s1(out.size(), 0.0), last0(out.size(), 0.0), last1(out.size(), 0.0);
    for (int j = 0; j <= 2 * max_ell; ++j) {
      for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k].skipped || j > 2 * out[k].ell) continue;
        const double a = walk.value(out[k].g);
        const double b = walk.value(out[k].g + h);
        s0[k] += a;
        s1[k] += b;
        if (j >= 2 * out[k].ell - 1) {
          last0[k] = std::max(last0[k], a);
          last1[k] = std::max(last1[k], b);
        }
      }
      if (j < 2 * max_ell) walk.advance();
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      auto& p = out[k];
      if (p.skipped) continue;
      if (!(s0[k] > 0.0) || !(s1[k] > 0.0)) {
        p.skipped = true;
        p.note = "g or g + h never reached within 2l steps";
        continue;
      }
      p.ratio = s1[k] / s0[k];
      p.truncation = std::max(last0[k] / s0[k], last1[k] / s1[k]);
    }
  }
  return out;
}

std::vector<AsymptoticPoint> asymptotic_multiplicity_ratios(const WalkModel& model, const Weight& mu,
                                                            std::span<const int> ells) {
  const RootSystem& rs = model.root_system();
  if (!model.minuscule_type()) throw NotMinusculeError("asymptotic ratios need minuscule letters");
  const Weight delta = irreducible_highest_weight(model);
  const int j = coset_offset(rs, mu, delta);
  const double log_sd = std::log(model.params().s_delta);
  const double log_smu = model.log_s(mu);
  std::vector<AsymptoticPoint> out;
  int max_ell = 0;
  for (int ell : ells) {
    AsymptoticPoint p;
    p.ell = ell;
    p.shift = j;
    std::vector<double> v(model.params().drift);
    for (double& c : v) c *= ell;
    p.lambda = nearest_weight(rs, v, mu + ell * delta);
    if (!rs.is_dominant(p.lambda)) p.lambda = rs.dominant_representative(p.lambda);
    p.target = std::exp(log_smu);
    out.push_back(p);
    max_ell = std::max(max_ell, ell);
  }
  std::vector<double> log_f_mu(out.size(), -INFINITY), log_f_0(out.size(), -INFINITY);
  CountWalk from_mu(model.root_system_ptr(), model.step_counts(), mu, BigInt(1));
  CountWalk from_zero(model.root_system_ptr(), model.step_counts(), rs.zero(), BigInt(1));
  for (int ell = 0; ell <= max_ell + j; ++ell) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (ell == out[k].ell) {
        const BigInt f = from_mu.value(out[k].lambda);
        if (sgn(f) != 0) log_f_mu[k] = log_value(f);
      }
      if (ell == out[k].ell + j) {
        const BigInt f = from_zero.value(out[k].lambda);
        if (sgn(f) != 0) log_f_0[k] = log_value(f);
      }
    }
    if (ell < max_ell) from_mu.advance();
    if (ell < max_ell + j) from_zero.advance();
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& p = out[k];
    if (std::isinf(log_f_mu[k]) || std::isinf(log_f_0[k])) {
      p.ratio = 0.0;
      p.rel_error = 1.0;
      continue;
    }
    p.ratio = std::exp(log_f_mu[k] + j * log_sd - log_f_0[k]);
    p.rel_error = std::abs(p.ratio - p.target) / p.target;
  }
  return out;
}

std::vector<PsiLimitPoint> psi_limit_series(const WalkModel& model, std::span<const int> ladder) {
  const RootSystem& rs = model.root_system();
  const double nab = nabla(rs, model.params().t);
  std::vector<PsiLimitPoint> out;
  for (int a : ladder) {
    PsiLimitPoint p;
    p.a = a;
    p.lambda = drift_lattice_point(model, a);
    p.psi = model.psi(p.lambda);
    p.nabla = nab;
    p.rel_gap = std::abs(weyl_alternating_tail(rs, p.lambda, model.log_x()));
    out.push_back(p);
  }
  return out;
}

CrystalPtr minuscule_type_crystal(const RootSystemPtr& rs, std::span<const int> indices) {
  if (indices.empty()) throw DomainError("a minuscule type representation needs at least one component");
  std::set<int> seen(indices.begin(), indices.end());
  if (seen.size() != indices.size()) throw DomainError("repeated component in the minuscule type sum");
  if (indices.size() > 1 && rs->type() != CartanType::A && rs->type() != CartanType::D) {
    throw NotMinusculeError("type " + std::string(1, to_char(rs->type())) +
                            " has no reducible minuscule type representation (table: A_n sums of V(w_j); "
                            "D_n sums over {w_1, w_{n-1}, w_n})");
  }
  std::vector<CrystalPtr> parts;
  for (int i : indices) parts.push_back(minuscule_crystal(rs, i));
  auto sum = std::make_shared<CrystalTable>(CrystalTable::direct_sum(parts));
  for (const auto& [w, n] : sum->weight_multiplicities()) {
    if (n > 1) {
      throw NotMinusculeError("components share the weight " + w.to_string() +
                              "; the sum is not of minuscule type");
    }
  }
  return sum;
}

MinusculeTypeReport minuscule_type_kernels(const RootSystemPtr& rs, std::span<const int> indices,
                                           std::span<const double> t, std::size_t min_window) {
  MinusculeTypeReport rep;
  const CrystalPtr m = minuscule_type_crystal(rs, indices);
  rep.letters = m->size();
  rep.multiplicity_free = true;
  for (const auto& [w, n] : m->weight_multiplicities()) rep.multiplicity_free = rep.multiplicity_free && n == 1;
  const WalkModel model(spectral_params(m, t));
  rep.distinct_steps = model.step_probabilities().size();
  const Window window = dominant_window_with_size(model, min_window);
  rep.doob = check_doob(model, window);
  rep.harmonic = check_psi_harmonic(model, window);
  return rep;
}

}  // namespace crystalwalk
