#include "l1l2prox/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace l1l2 {

std::size_t CanonicalForm::support_limit() const {
  std::size_t k = 0;
  while (k < sorted.size() && sorted[k] > 0) ++k;
  return k;
}

const ProxProblem& validate(const ProxProblem& p) {
  if (p.y.empty()) throw EmptyVectorError("y is empty");
  for (double v : p.y)
    if (!std::isfinite(v)) throw NonFiniteError("y has a non-finite entry");
  if (!std::isfinite(p.mu) || p.mu <= 0) throw BadMuError("mu must be finite and > 0");
  if (!std::isfinite(p.a) || p.a < 0 || p.a > 1) throw BadAError("a must be in [0, 1]");
  return p;
}

CanonicalForm canonicalize(std::span<const double> y) {
  const std::size_t n = y.size();
  // sorting packed (magnitude, index) pairs beats an indirect index sort on
  // large inputs; the index component makes the order total, which gives
  // the same result as a stable sort on magnitudes alone
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {std::fabs(y[i]), i};
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  CanonicalForm c;
  c.sorted.resize(n);
  c.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.sorted[i] = order[i].first;
    c.perm[i] = order[i].second;
  }
  c.signs.resize(n);
  for (std::size_t j = 0; j < n; ++j) c.signs[j] = y[j] > 0 ? 1.0 : (y[j] < 0 ? -1.0 : 0.0);
  return c;
}

std::vector<double> reconstruct(const CanonicalForm& canon, std::span<const double> u) {
  const std::size_t k = u.size();
  const double r = dot(std::span<const double>(canon.sorted).first(k), u);
  std::vector<double> x(canon.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = canon.perm[i];
    x[j] = r * u[i] * canon.signs[j];
  }
  return x;
}

double q_value(std::span<const double> x, const ProxProblem& p) {
  double dist = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - p.y[i];
    dist += d * d;
  }
  const double n2 = std::sqrt(norm2sq(x));
  const double h = n2 > 0 ? norm1(x) / n2 : p.a;
  return 0.5 * dist + p.mu * h;
}

}  // namespace l1l2
