#include "l1l2prox/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace l1l2 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Unnormalized direction entries mu*(S1*z_i - w)/(lam*w) for i < k, written
// identically everywhere so naive and optimized paths agree bitwise.
double direction_entry(double mu, double s1, double zi, double w, double denom) {
  return mu * (s1 * zi - w) / denom;
}

std::vector<double> build_direction(const CanonicalForm& canon, std::size_t k,
                                    double lambda_star, double s1, double s2, double mu) {
  const double w = s2 - lambda_star;
  const double denom = lambda_star * w;
  std::vector<double> u(k);
  double nrm2 = 0;
  for (std::size_t i = 0; i < k; ++i) {
    u[i] = direction_entry(mu, s1, canon.sorted[i], w, denom);
    nrm2 += u[i] * u[i];
  }
  const double nrm = std::sqrt(nrm2);
  for (double& v : u) v /= nrm;
  return u;
}

double direct_objective(const CanonicalForm& canon, double mu, std::span<const double> u) {
  double t = 0;
  double l1 = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    t += canon.sorted[i] * u[i];
    l1 += u[i];
  }
  return -0.5 * t * t + mu * l1;
}

}  // namespace

bool SweepDiagnostics::any_polish_failure() const {
  if (polish_failure_seen) return true;
  for (const KRecord& r : records)
    if (r.polish_failed) return true;
  return false;
}

double pruning_statistic(std::size_t k, double s1, double s2) {
  if (!(s2 > 0)) return kNaN;
  const double d = std::max(static_cast<double>(k) * s2 - s1 * s1, 0.0);
  return (std::cbrt(d) + std::cbrt(s1 * s1)) / s2;
}

bool existence_test(std::size_t k, double s1, double s2, double mu) {
  if (k == 1) return s1 > 0;
  if (!(s2 > 0)) return false;
  return pruning_statistic(k, s1, s2) <= std::cbrt(1.0 / (mu * mu));
}

double f_value_fast(std::size_t k, double lambda_star, double s1, double s2, double mu) {
  const double w = s2 - lambda_star;
  const double s1sq = s1 * s1;
  const double scale = mu / (lambda_star * w);
  // ||u_raw||^2; exactly 1 at the exact root, and dividing by the attained
  // norm keeps this formula consistent with the direct objective on the
  // normalized direction even when w is ulp-limited.
  const double c = std::sqrt(scale * scale *
                             (s1sq * (lambda_star - w) + static_cast<double>(k) * w * w));
  const double t = mu * s1 / (w * c);
  const double l1 = scale * (s1sq - static_cast<double>(k) * w) / c;
  return -0.5 * t * t + mu * l1;
}

std::optional<Candidate> candidate_for_k(std::size_t k, const CanonicalForm& canon,
                                         const PrefixSums& sums, double mu,
                                         bool* polish_failed) {
  if (polish_failed) *polish_failed = false;
  if (k == 0 || k > canon.size() || !(canon.sorted[k - 1] > 0)) return std::nullopt;
  if (k == 1) {
    Candidate c;
    c.k = 1;
    c.lambda_star = kNaN;
    c.u = {1.0};
    c.f_value = -0.5 * canon.sorted[0] * canon.sorted[0] + mu;
    return c;
  }
  if (!existence_test(k, sums.s1, sums.s2, mu)) return std::nullopt;
  const double lo = sums.s2 - canon.sorted[k - 1] * sums.s1;
  IntervalRoots ir;
  try {
    ir = roots_in_interval(coeffs_from_sums(k, sums.s1, sums.s2, mu), lo, sums.s2);
  } catch (const PolishDivergenceError&) {
    if (!polish_failed) throw;
    *polish_failed = true;
    return std::nullopt;
  }
  if (ir.roots.empty()) return std::nullopt;
  const double lam = ir.roots.back();
  const double w = sums.s2 - lam;
  const double umin = direction_entry(mu, sums.s1, canon.sorted[k - 1], w, lam * w);
  if (!(umin > kPositivityTol)) return std::nullopt;
  Candidate c;
  c.k = k;
  c.lambda_star = lam;
  c.u = build_direction(canon, k, lam, sums.s1, sums.s2, mu);
  c.f_value = f_value_fast(k, lam, sums.s1, sums.s2, mu);
  return c;
}

ScanResult scan_candidates(const CanonicalForm& canon, double mu, Mode mode,
                           bool with_diagnostics) {
  const std::size_t n = canon.size();
  const std::vector<double>& z = canon.sorted;
  ScanResult res;
  if (with_diagnostics) res.diagnostics.records.resize(n);
  KRecord scratch;
  res.found.reserve(canon.support_limit());
  res.y_norm2sq = norm2sq(z);
  const double half = 0.5 * res.y_norm2sq;
  const std::size_t kmax = canon.support_limit();
  // k-independent piece of existence_test, hoisted; the comparison below
  // stays bitwise equal to calling it
  const double mu_thresh = std::cbrt(1.0 / (mu * mu));
  PrefixSums run;
  for (std::size_t k = 1; k <= n; ++k) {
    KRecord& rec = with_diagnostics ? res.diagnostics.records[k - 1] : (scratch = KRecord{});
    rec.k = k;
    double s1;
    double s2;
    if (mode == Mode::optimized) {
      run.s1 += z[k - 1];
      run.s2 += z[k - 1] * z[k - 1];
      s1 = run.s1;
      s2 = run.s2;
    } else {
      s1 = 0;
      s2 = 0;
      for (std::size_t i = 0; i < k; ++i) {
        s1 += z[i];
        s2 += z[i] * z[i];
      }
    }
    rec.a_k = pruning_statistic(k, s1, s2);
    if (k > kmax) continue;
    if (k == 1) {
      rec.exists = true;
      const double f = -0.5 * z[0] * z[0] + mu;
      rec.f_value = f;
      rec.q_value = half + f;
      res.found.push_back({1, kNaN, f});
      continue;
    }
    rec.exists = s2 > 0 && rec.a_k <= mu_thresh;
    if (mode == Mode::optimized && !rec.exists) continue;
    const double lo = s2 - z[k - 1] * s1;
    double roots[kMaxIntervalRoots];
    double residuals[kMaxIntervalRoots];
    std::size_t nroots;
    try {
      nroots = interval_roots_buf(coeffs_from_sums(k, s1, s2, mu), lo, s2, roots, residuals);
    } catch (const PolishDivergenceError&) {
      rec.polish_failed = true;
      res.diagnostics.polish_failure_seen = true;
      continue;
    }
    if (nroots == 0) continue;
    const double lam = roots[nroots - 1];
    if (nroots >= 2) rec.lambda_minor = roots[0];
    const double w = s2 - lam;
    const double umin = direction_entry(mu, s1, z[k - 1], w, lam * w);
    if (!(umin > kPositivityTol)) continue;
    double f;
    if (mode == Mode::optimized) {
      f = f_value_fast(k, lam, s1, s2, mu);
    } else {
      const std::vector<double> u = build_direction(canon, k, lam, s1, s2, mu);
      f = direct_objective(canon, mu, u);
    }
    rec.lambda_star = lam;
    rec.f_value = f;
    rec.q_value = half + f;
    res.found.push_back({k, lam, f});
  }
  return res;
}

Candidate materialize(const CanonicalForm& canon, const CandidateSummary& s, double mu) {
  Candidate c;
  c.k = s.k;
  c.lambda_star = s.lambda_star;
  c.f_value = s.f_value;
  if (s.k == 1) {
    c.u = {1.0};
    return c;
  }
  double s1 = 0;
  double s2 = 0;
  for (std::size_t i = 0; i < s.k; ++i) {
    s1 += canon.sorted[i];
    s2 += canon.sorted[i] * canon.sorted[i];
  }
  c.u = build_direction(canon, s.k, s.lambda_star, s1, s2, mu);
  return c;
}

Enumeration enumerate_candidates(const CanonicalForm& canon, double mu, Mode mode) {
  ScanResult sr = scan_candidates(canon, mu, mode);
  Enumeration e;
  e.diagnostics = std::move(sr.diagnostics);
  e.candidates.reserve(sr.found.size());
  for (const CandidateSummary& s : sr.found) e.candidates.push_back(materialize(canon, s, mu));
  return e;
}

ProxResult select(std::span<const CandidateSummary> found, const CanonicalForm& canon,
                  const ProxProblem& p) {
  ProxResult res;
  const double mu_a = p.mu * p.a;
  const auto zero_member = [&] {
    ProxMember m;
    m.x.assign(p.y.size(), 0.0);
    m.k = 0;
    m.q = q_value(m.x, p);
    return m;
  };
  if (found.empty()) {
    res.members.push_back(zero_member());
    res.contains_zero = true;
    return res;
  }
  double best = found[0].f_value;
  for (const CandidateSummary& s : found) best = std::min(best, s.f_value);
  const double tie = kTieRel * (1.0 + std::fabs(best));
  const double gather = std::min(kGatherRel * (1.0 + std::fabs(best)), kGatherAbs);
  const bool zero_wins = mu_a <= best + tie;
  const bool nonzero_wins = best <= mu_a + tie;
  if (nonzero_wins) {
    for (const CandidateSummary& s : found) {
      if (s.f_value > best + gather) continue;
      Candidate c = materialize(canon, s, p.mu);
      ProxMember m;
      m.x = reconstruct(canon, c.u);
      m.k = s.k;
      m.q = q_value(m.x, p);
      res.members.push_back(std::move(m));
    }
  }
  if (zero_wins) {
    res.members.push_back(zero_member());
    res.contains_zero = true;
  }
  res.is_set_valued = res.members.size() > 1;
  return res;
}

ProxResult select(std::span<const Candidate> candidates, const CanonicalForm& canon,
                  const ProxProblem& p) {
  std::vector<CandidateSummary> found;
  found.reserve(candidates.size());
  for (const Candidate& c : candidates) found.push_back({c.k, c.lambda_star, c.f_value});
  return select(std::span<const CandidateSummary>(found), canon, p);
}

ProxResult prox(const ProxProblem& p) {
  validate(p);
  const CanonicalForm canon = canonicalize(p.y);
  if (canon.support_limit() == 0) {
    ProxResult res;
    ProxMember m;
    m.x.assign(p.y.size(), 0.0);
    m.k = 0;
    m.q = q_value(m.x, p);
    res.members.push_back(std::move(m));
    res.contains_zero = true;
    return res;
  }
  ScanResult sr = scan_candidates(canon, p.mu, Mode::optimized, false);
  if (sr.diagnostics.any_polish_failure())
    throw PolishDivergenceError("quartic polishing failed during candidate scan");
  return select(std::span<const CandidateSummary>(sr.found), canon, p);
}

}  // namespace l1l2
