#include "crystalwalk/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "crystalwalk/errors.hpp"

namespace crystalwalk {

namespace {

Eigen::VectorXd to_real(const Weight& w) {
  Eigen::VectorXd v(w.dim());
  for (std::size_t k = 0; k < w.dim(); ++k) v[k] = w.real(k);
  return v;
}

double dot(const Weight& w, std::span<const double> y) { return w.dot(y); }

void check_t(const RootSystem& rs, std::span<const double> t) {
  if (t.size() != static_cast<std::size_t>(rs.rank())) {
    throw DomainError("expected " + std::to_string(rs.rank()) + " values of t for " + rs.name() + ", got " +
                      std::to_string(t.size()));
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(t[i])) {
      throw DomainError("t_" + std::to_string(i + 1) + " = " + std::to_string(t[i]) + " must be positive");
    }
  }
}

void check_log_x(const RootSystem& rs, std::span<const double> log_x) {
  if (log_x.size() != rs.ambient_dim()) {
    throw DomainError("x has dimension " + std::to_string(log_x.size()) + ", expected " +
                      std::to_string(rs.ambient_dim()));
  }
  for (double v : log_x) {
    if (!std::isfinite(v)) throw DomainError("x must have strictly positive finite coordinates");
  }
}

// Square system [simple roots; gauge row] acting on log x.
Eigen::MatrixXd system_matrix(const RootSystem& rs) {
  const auto N = static_cast<Eigen::Index>(rs.ambient_dim());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < rs.rank(); ++i) M.row(i) = to_real(rs.simple_roots()[i]).transpose();
  if (rs.type() == CartanType::A) M(N - 1, 0) = 1.0;
  return M;
}

void reflect_real(const RootSystem& rs, std::vector<double>& y, int i) {
  const Weight& a = rs.simple_roots()[i];
  const double norm = 0.25 * static_cast<double>(a.dot4(a));
  const double c = 2.0 * a.dot(y) / norm;
  for (std::size_t k = 0; k < y.size(); ++k) y[k] -= c * a.real(k);
}

std::vector<double> dominant_real(const RootSystem& rs, std::span<const double> log_x) {
  std::vector<double> y(log_x.begin(), log_x.end());
  for (int guard = 0; guard < 10000; ++guard) {
    bool changed = false;
    for (int i = 0; i < rs.rank(); ++i) {
      if (rs.simple_roots()[i].dot(y) < 0.0) {
        reflect_real(rs, y, i);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return y;
}

double alternating(const RootSystem& rs, const Weight& lambda, std::span<const double> y, bool skip_identity) {
  const Weight shifted = lambda + rs.rho();
  const double base = dot(shifted, y);
  double sum = 0.0;
  for (const auto& w : rs.weyl_elements()) {
    const Weight image = w.apply(shifted);
    if (skip_identity && image == shifted) continue;
    sum += w.sign * std::exp(dot(image, y) - base);
  }
  return sum;
}

// Coefficients of a real vector on the simple roots (type A assumes coordinate sum 0).
std::vector<double> real_root_coefficients(const RootSystem& rs, std::span<const double> v) {
  const int n = rs.rank();
  std::vector<double> prefix(v.size() + 1, 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) prefix[k + 1] = prefix[k] + v[k];
  std::vector<double> c(n);
  switch (rs.type()) {
    case CartanType::A:
    case CartanType::B:
      for (int i = 0; i < n; ++i) c[i] = prefix[i + 1];
      break;
    case CartanType::C:
      for (int i = 0; i + 1 < n; ++i) c[i] = prefix[i + 1];
      c[n - 1] = prefix[n] / 2.0;
      break;
    case CartanType::D:
      for (int i = 0; i + 2 < n; ++i) c[i] = prefix[i + 1];
      c[n - 2] = (prefix[n - 1] - v[n - 1]) / 2.0;
      c[n - 1] = prefix[n] / 2.0;
      break;
  }
  return c;
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double e : v) s += std::exp(e - m);
  return m + std::log(s);
}

}  // namespace

Gauge parse_gauge(std::string_view text) {
  if (text == "sum" || text == "sum-one" || text == "sum_one") return Gauge::SumOne;
  if (text == "first" || text == "first-one" || text == "first_one") return Gauge::FirstOne;
  throw DomainError("unknown gauge '" + std::string(text) + "' (expected sum-one or first-one)");
}

std::string to_string(Gauge gauge) { return gauge == Gauge::SumOne ? "sum-one" : "first-one"; }

std::vector<double> solve_log_x(const RootSystem& rs, std::span<const double> t, Gauge gauge) {
  check_t(rs, t);
  const auto N = static_cast<Eigen::Index>(rs.ambient_dim());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
  for (int i = 0; i < rs.rank(); ++i) rhs[i] = -std::log(t[i]);
  const Eigen::VectorXd y = system_matrix(rs).fullPivLu().solve(rhs);
  std::vector<double> out(y.data(), y.data() + N);
  if (rs.type() == CartanType::A && gauge == Gauge::SumOne) {
    const double shift = log_sum_exp(out);
    for (double& v : out) v -= shift;
  }
  return out;
}

std::vector<double> solve_x_from_t(const RootSystem& rs, std::span<const double> t, Gauge gauge) {
  auto y = solve_log_x(rs, t, gauge);
  for (double& v : y) v = std::exp(v);
  return y;
}

std::vector<double> t_from_log_x(const RootSystem& rs, std::span<const double> log_x) {
  check_log_x(rs, log_x);
  std::vector<double> t(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) t[i] = std::exp(-rs.simple_roots()[i].dot(log_x));
  return t;
}

double monomial(const Weight& beta, std::span<const double> log_x) { return std::exp(beta.dot(log_x)); }

double CharacterValue::value() const { return std::exp(log_value); }

CharacterValue weyl_character_log(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x) {
  check_log_x(rs, log_x);
  if (!rs.is_dominant(lambda)) throw DomainError("weight " + lambda.to_string() + " is not dominant");
  CharacterValue out;
  std::vector<double> y = dominant_real(rs, log_x);
  double scale = 1.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  const double wall = 1e-12 * scale;
  int on_wall = 0;
  for (const auto& alpha : rs.positive_roots()) {
    if (std::abs(alpha.dot(y)) <= wall) ++on_wall;
  }
  if (on_wall == static_cast<int>(rs.positive_roots().size())) {
    out.log_value = lambda.dot(y) + log_bigint(rs.weyl_dimension(lambda));
    return out;
  }
  if (on_wall > 0) {
    const double eta = 1e-7 * scale;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += eta * rs.rho().real(k);
    out.degraded = true;
  }
  const double sum = alternating(rs, lambda, y, false);
  double log_denominator = 0.0;
  for (const auto& alpha : rs.positive_roots()) log_denominator += std::log(-std::expm1(-alpha.dot(y)));
  out.log_value = lambda.dot(y) + std::log(sum) - log_denominator;
  return out;
}

double weyl_character(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x) {
  return weyl_character_log(rs, lambda, log_x).value();
}

double weyl_alternating_sum(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x) {
  check_log_x(rs, log_x);
  return alternating(rs, lambda, log_x, false);
}

double weyl_alternating_tail(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x) {
  check_log_x(rs, log_x);
  return alternating(rs, lambda, log_x, true);
}

double crystal_character(const CrystalTable& c, std::span<const double> log_x) {
  check_log_x(c.root_system(), log_x);
  double s = 0.0;
  for (const auto& w : c.weights()) s += monomial(w, log_x);
  return s;
}

double crystal_character(const ExtractedCrystal& c, std::span<const double> log_x) {
  check_log_x(c.letters()->root_system(), log_x);
  double s = 0.0;
  for (const auto& w : c.weights()) s += monomial(w, log_x);
  return s;
}

SpectralParams letter_distribution(const CrystalPtr& crystal, std::span<const double> log_x, Gauge gauge) {
  const RootSystem& rs = crystal->root_system();
  check_log_x(rs, log_x);
  SpectralParams p;
  p.crystal = crystal;
  p.gauge = gauge;
  p.log_x.assign(log_x.begin(), log_x.end());
  for (double v : p.log_x) p.x.push_back(std::exp(v));
  p.t = t_from_log_x(rs, log_x);
  std::vector<double> exponents;
  for (const auto& w : crystal->weights()) exponents.push_back(w.dot(log_x));
  const double log_s = log_sum_exp(exponents);
  p.s_delta = std::exp(log_s);
  for (double e : exponents) p.letter_probs.push_back(std::exp(e - log_s));
  p.drift = drift(p);
  return p;
}

SpectralParams spectral_params(const CrystalPtr& crystal, std::span<const double> t, Gauge gauge) {
  const auto log_x = solve_log_x(crystal->root_system(), t, gauge);
  SpectralParams p = letter_distribution(crystal, log_x, gauge);
  p.t.assign(t.begin(), t.end());
  return p;
}

std::vector<double> drift(const SpectralParams& params) {
  std::vector<double> m(params.root_system().ambient_dim(), 0.0);
  for (Vertex b = 0; b < params.crystal->size(); ++b) {
    const Weight& w = params.crystal->weight(b);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += params.letter_probs[b] * w.real(k);
  }
  return m;
}

bool all_t_below_one(std::span<const double> t) {
  return std::all_of(t.begin(), t.end(), [](double v) { return v > 0.0 && v < 1.0; });
}

double pairing_real(const RootSystem& rs, std::span<const double> v, int i) {
  const Weight& a = rs.simple_roots()[i];
  return 2.0 * a.dot(v) / (0.25 * static_cast<double>(a.dot4(a)));
}

bool strictly_dominant_real(const RootSystem& rs, std::span<const double> v) {
  for (int i = 0; i < rs.rank(); ++i) {
    if (!(pairing_real(rs, v, i) > 0.0)) return false;
  }
  return true;
}

std::vector<double> t_from_drift(const CrystalPtr& crystal, std::span<const double> target) {
  const RootSystem& rs = crystal->root_system();
  const std::size_t N = rs.ambient_dim();
  const int n = rs.rank();
  if (target.size() != N) {
    throw DomainError("drift has dimension " + std::to_string(target.size()) + ", expected " + std::to_string(N));
  }
  if (!strictly_dominant_real(rs, target)) throw DomainError("drift is not strictly inside the Weyl chamber");
  const auto tops = crystal->highest_vertices();
  if (tops.size() != 1) throw DomainError("drift inversion needs an irreducible letter crystal");
  const auto delta_real = crystal->weight(tops.front()).to_real();
  if (rs.type() == CartanType::A) {
    const double level = std::accumulate(delta_real.begin(), delta_real.end(), 0.0);
    const double sum = std::accumulate(target.begin(), target.end(), 0.0);
    if (std::abs(level - sum) > 1e-12) {
      throw DomainError("type A drift must have coordinate sum " + std::to_string(level));
    }
  }
  std::vector<double> gap(N);
  for (std::size_t k = 0; k < N; ++k) gap[k] = delta_real[k] - target[k];
  for (double c : real_root_coefficients(rs, gap)) {
    if (!(c > 1e-12)) throw DomainError("direction leaves the weight polytope; no drift points along it");
  }

  // Minimize log s_delta(x) - <target, log x> over s = -log t (strictly convex).
  const Eigen::MatrixXd B = system_matrix(rs).fullPivLu().inverse().leftCols(n);
  Eigen::MatrixXd W(crystal->size(), N);
  for (Vertex b = 0; b < crystal->size(); ++b) W.row(b) = to_real(crystal->weight(b)).transpose();
  const Eigen::Map<const Eigen::VectorXd> m_star(target.data(), static_cast<Eigen::Index>(N));

  auto objective = [&](const Eigen::VectorXd& s, Eigen::VectorXd* probs) {
    const Eigen::VectorXd y = B * s;
    const Eigen::VectorXd e = W * y;
    const double mx = e.maxCoeff();
    const Eigen::VectorXd p = (e.array() - mx).exp();
    const double z = p.sum();
    if (probs) *probs = p / z;
    return mx + std::log(z) - m_star.dot(y);
  };

  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd p;
  double value = objective(s, &p);
  for (int iter = 0; iter < 500; ++iter) {
    const Eigen::VectorXd m = W.transpose() * p;
    const Eigen::VectorXd grad = B.transpose() * (m - m_star);
    if ((m - m_star).cwiseAbs().maxCoeff() < 1e-14) break;
    const Eigen::MatrixXd cov = W.transpose() * p.asDiagonal() * W - m * m.transpose();
    const Eigen::MatrixXd H = B.transpose() * cov * B;
    const Eigen::VectorXd step = -H.ldlt().solve(grad);
    double lr = 1.0;
    Eigen::VectorXd next_p;
    double next_value = objective(s + step, &next_p);
    while (next_value > value + 1e-4 * lr * grad.dot(step) && lr > 1e-12) {
      lr *= 0.5;
      next_value = objective(s + lr * step, &next_p);
    }
    if (next_value >= value && lr <= 1e-12) break;
    s += lr * step;
    value = next_value;
    p = next_p;
  }
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = std::exp(-s[i]);
  if (!all_t_below_one(t)) throw DomainError("drift inversion did not land in 0 < t_i < 1");
  return t;
}

std::vector<double> t_from_drift_direction(const CrystalPtr& crystal, std::span<const double> direction) {
  const RootSystem& rs = crystal->root_system();
  const std::size_t N = rs.ambient_dim();
  const int n = rs.rank();
  if (direction.size() != N) {
    throw DomainError("direction has dimension " + std::to_string(direction.size()) + ", expected " +
                      std::to_string(N));
  }
  if (!strictly_dominant_real(rs, direction)) {
    throw DomainError("direction is not strictly inside the Weyl chamber");
  }
  const auto tops = crystal->highest_vertices();
  if (tops.size() != 1) throw DomainError("drift inversion needs an irreducible letter crystal");
  const Weight& delta = crystal->weight(tops.front());
  const auto delta_real = delta.to_real();

  std::vector<double> target(N);
  if (rs.type() == CartanType::A) {
    const double level = std::accumulate(delta_real.begin(), delta_real.end(), 0.0);
    const double sum = std::accumulate(direction.begin(), direction.end(), 0.0);
    if (!(sum > 0.0)) throw DomainError("direction has nonpositive coordinate sum; no drift points along it");
    for (std::size_t k = 0; k < N; ++k) target[k] = level * direction[k] / sum;
  } else {
    const auto dc = real_root_coefficients(rs, direction);
    const auto hc = real_root_coefficients(rs, delta_real);
    double c_max = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) c_max = std::min(c_max, hc[i] / dc[i]);
    for (std::size_t k = 0; k < N; ++k) target[k] = 0.5 * c_max * direction[k];
  }
  return t_from_drift(crystal, target);
}


double psi(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x) {
  const CharacterValue s = weyl_character_log(rs, lambda, log_x);
  return std::exp(s.log_value - lambda.dot(log_x));
}

double nabla(const RootSystem& rs, std::span<const double> t) {
  check_t(rs, t);
  double out = 1.0;
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
    const auto& c = rs.positive_root_coefficients()[r];
    double log_ta = 0.0;
    for (int i = 0; i < rs.rank(); ++i) log_ta += c[i] * std::log(t[i]);
    if (log_ta >= 0.0) {
      throw DomainError("t^[alpha] >= 1 for the positive root alpha = (" + rs.positive_roots()[r].to_string() +
                        "); nabla diverges");
    }
    out /= -std::expm1(log_ta);
  }
  return out;
}

}  // namespace crystalwalk
