#include "l1l2prox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace l1l2 {

namespace {

double sphere_objective(std::span<const double> z, double mu, std::span<const double> u) {
  return -0.5 * dot(z, u) * dot(z, u) + mu * norm1(u);
}

void normalize_or_axis(std::vector<double>& u) {
  const double n = std::sqrt(norm2sq(u));
  if (n > 0) {
    for (double& v : u) v /= n;
  } else {
    std::fill(u.begin(), u.end(), 0.0);
    u[0] = 1.0;
  }
}

// Projected subgradient descent with backtracking on the unit sphere.
// Returns the attained objective; u is updated in place.
double descend(std::span<const double> z, double mu, std::vector<double>& u, int max_iter,
               double step_tol) {
  const std::size_t k = z.size();
  normalize_or_axis(u);
  double f = sphere_objective(z, mu, u);
  std::vector<double> g(k);
  std::vector<double> trial(k);
  for (int iter = 0; iter < max_iter; ++iter) {
    const double t = dot(z, u);
    for (std::size_t i = 0; i < k; ++i)
      g[i] = -t * z[i] + mu * (u[i] > 0 ? 1.0 : (u[i] < 0 ? -1.0 : 0.0));
    const double gu = dot(g, u);
    double gnorm2 = 0;
    for (std::size_t i = 0; i < k; ++i) {
      g[i] -= gu * u[i];
      gnorm2 += g[i] * g[i];
    }
    if (gnorm2 <= 1e-18 * (1.0 + f * f)) break;
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < k; ++i) trial[i] = u[i] - alpha * g[i];
      normalize_or_axis(trial);
      const double ft = sphere_objective(z, mu, trial);
      if (ft < f - 1e-4 * alpha * gnorm2) {
        double delta = 0;
        for (std::size_t i = 0; i < k; ++i)
          delta = std::max(delta, std::fabs(trial[i] - u[i]));
        u = trial;
        f = ft;
        moved = true;
        if (delta < step_tol) iter = max_iter;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return f;
}

std::vector<std::uint32_t> support_patterns(std::size_t n, std::mt19937_64& rng) {
  const std::uint32_t all = (1u << n) - 1;
  std::vector<std::uint32_t> out;
  if (all <= 1000) {
    out.resize(all);
    for (std::uint32_t m = 1; m <= all; ++m) out[m - 1] = m;
  } else {
    std::uniform_int_distribution<std::uint32_t> dist(1, all);
    std::vector<bool> seen(all + 1, false);
    while (out.size() < 1000) {
      const std::uint32_t m = dist(rng);
      if (!seen[m]) {
        seen[m] = true;
        out.push_back(m);
      }
    }
  }
  return out;
}

}  // namespace

OracleResult oracle_prox(const ProxProblem& p, const OracleConfig& cfg) {
  validate(p);
  const std::size_t n = p.y.size();
  if (n > 8) throw Error("oracle_prox handles n <= 8 only");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  OracleResult best;
  best.x.assign(n, 0.0);
  best.q = q_value(best.x, p);

  const std::vector<std::uint32_t> patterns = support_patterns(n, rng);
  const std::size_t np = patterns.size();

  std::vector<std::size_t> idx;
  std::vector<double> zsub;
  std::vector<double> u;
  const auto try_pattern = [&](std::size_t pi, bool aligned) {
    const std::uint32_t mask = patterns[pi];
    idx.clear();
    zsub.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        idx.push_back(j);
        zsub.push_back(p.y[j]);
      }
    u.resize(idx.size());
    if (aligned) {
      std::copy(zsub.begin(), zsub.end(), u.begin());
    } else {
      for (double& v : u) v = gauss(rng);
    }
    descend(zsub, p.mu, u, cfg.max_iter, cfg.step_tol);
    const double r = dot(zsub, u);
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < idx.size(); ++j) x[idx[j]] = r * u[j];
    const double q = q_value(x, p);
    if (q < best.q) {
      best.q = q;
      best.x = std::move(x);
    }
  };

  for (std::size_t pi = 0; pi < np; ++pi) try_pattern(pi, true);
  for (int s = 0; s < cfg.n_starts; ++s) try_pattern(s % np, false);
  return best;
}

double oracle_sphere_min(std::span<const double> yk, double mu, const OracleConfig& cfg) {
  const std::size_t k = yk.size();
  if (k < 1 || k > 8) throw Error("oracle_sphere_min handles 1 <= k <= 8 only");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> u(k);
  const auto run = [&](std::vector<double> start) {
    const double f = descend(yk, mu, start, cfg.max_iter, cfg.step_tol);
    best = std::min(best, f);
  };

  std::vector<double> aligned(yk.begin(), yk.end());
  run(aligned);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> axis(k, 0.0);
    axis[j] = yk[j] >= 0 ? 1.0 : -1.0;
    run(axis);
  }
  const int starts = std::max(cfg.n_starts, 1);
  for (int s = 0; s < starts; ++s) {
    for (double& v : u) v = gauss(rng);
    run(u);
  }
  return best;
}

}  // namespace l1l2
