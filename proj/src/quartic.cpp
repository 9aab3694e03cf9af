#include "l1l2prox/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace l1l2 {

double evaluate(const QuarticCoeffs& c, double x) {
  return (((c.a4 * x + c.a3) * x + c.a2) * x + c.a1) * x + c.a0;
}

double derivative(const QuarticCoeffs& c, double x) {
  return ((4.0 * c.a4 * x + 3.0 * c.a3) * x + 2.0 * c.a2) * x + c.a1;
}

double residual_scale(const QuarticCoeffs& c, double x) {
  const double x2 = x * x;
  double s = 1.0;
  s = std::max(s, std::fabs(c.a0));
  s = std::max(s, std::fabs(c.a1 * x));
  s = std::max(s, std::fabs(c.a2) * x2);
  s = std::max(s, std::fabs(c.a3) * std::fabs(x) * x2);
  s = std::max(s, x2 * x2);
  return s;
}

bool residual_ok(const QuarticCoeffs& c, double r, double psi_r) {
  return std::fabs(psi_r) <= kResidualTol * residual_scale(c, r);
}

QuarticCoeffs coeffs_from_sums(std::size_t k, double s1, double s2, double mu) {
  if (k < 2 || !(s1 > 0) || !(s2 > 0) || !(mu >= 0) || !std::isfinite(s1) ||
      !std::isfinite(s2) || !std::isfinite(mu))
    throw Error("coeffs_from_sums: need k >= 2, S1 > 0, S2 > 0, mu >= 0");
  double d = static_cast<double>(k) * s2 - s1 * s1;
  if (d < -kCauchySchwarzSlack * static_cast<double>(k) * s2)
    throw CauchySchwarzError("S1^2 > k*S2: sums are not prefix sums of a real vector");
  if (d < 0) d = 0;
  const double mu2 = mu * mu;
  const double m2d = mu2 * d;
  QuarticCoeffs c;
  c.a0 = -s2 * m2d;
  c.a1 = 2.0 * m2d;
  c.a2 = s2 * s2 - static_cast<double>(k) * mu2;
  c.a3 = -2.0 * s2;
  c.a4 = 1.0;
  c.from_sums = true;
  c.k = k;
  c.s1 = s1;
  c.s2 = s2;
  c.mu = mu;
  return c;
}

namespace {

constexpr double kImagTol = 1e-8;
constexpr int kPolishIters = 50;

// Factored evaluation of a from-sums quartic; see the header note.
struct FactoredQuartic {
  double s2 = 0;
  double m2k = 0;     // k mu^2
  double m2s1sq = 0;  // mu^2 S1^2
  double m2d = 0;     // mu^2 (k S2 - S1^2), clamped at 0
  double s1sq = 0;
  double d = 0;

  double eval(double x) const {
    const double w = s2 - x;
    return x * x * w * w - (m2k * w * w + m2s1sq * (2.0 * x - s2));
  }
  double deriv(double x) const {
    const double w = s2 - x;
    return 2.0 * x * w * (w - x) + 2.0 * (m2k * w - m2s1sq);
  }
};

FactoredQuartic factored_from(const QuarticCoeffs& c) {
  FactoredQuartic f;
  f.s2 = c.s2;
  const double mu2 = c.mu * c.mu;
  f.m2k = static_cast<double>(c.k) * mu2;
  f.s1sq = c.s1 * c.s1;
  f.m2s1sq = mu2 * f.s1sq;
  f.d = std::max(static_cast<double>(c.k) * c.s2 - f.s1sq, 0.0);
  f.m2d = mu2 * f.d;
  return f;
}

// Safeguarded Newton on the factored form over a sign-changing bracket.
// seed, when inside (a, b), replaces the midpoint start; a good seed cuts
// the iteration count to a handful.
double bracketed_root(const FactoredQuartic& fq, double a, double b,
                      double seed = std::numeric_limits<double>::quiet_NaN()) {
  double fa = fq.eval(a);
  double fb = fq.eval(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  double x = seed > a && seed < b ? seed : 0.5 * (a + b);
  for (int i = 0; i < 200; ++i) {
    const double f = fq.eval(x);
    if (f == 0) return x;
    if ((f > 0) == (fa > 0)) {
      a = x;
      fa = f;
    } else {
      b = x;
      fb = f;
    }
    const double df = fq.deriv(x);
    double nx = df != 0 ? x - f / df : std::numeric_limits<double>::quiet_NaN();
    if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
    if (nx == x || nx == a || nx == b) break;
    x = nx;
  }
  return x;
}

// Largest real root of x^3 + a x^2 + b x + c.
double cubic_largest_root(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  double t;
  if (disc >= 0) {
    const double sd = std::sqrt(disc);
    t = std::cbrt(-0.5 * q + sd) + std::cbrt(-0.5 * q - sd);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    t = m * std::cos(std::acos(arg) / 3.0);
  }
  return t + shift;
}

void push_quadratic(double b, double c, std::complex<double>* out) {
  // x^2 + b x + c
  const double disc = b * b - 4.0 * c;
  if (disc < 0) {
    const double im = 0.5 * std::sqrt(-disc);
    out[0] = {-0.5 * b, im};
    out[1] = {-0.5 * b, -im};
    return;
  }
  const double sd = std::sqrt(disc);
  const double q = b >= 0 ? -0.5 * (b + sd) : -0.5 * (b - sd);
  out[0] = {q, 0.0};
  out[1] = {q != 0 ? c / q : -b - q, 0.0};
}

// Resolvent-cubic factorization of the depressed quartic; returns 4 roots.
void ferrari_roots(const QuarticCoeffs& c, std::complex<double> out[4]) {
  const double A = c.a3 / c.a4;
  const double B = c.a2 / c.a4;
  const double C = c.a1 / c.a4;
  const double D = c.a0 / c.a4;
  const double p = B - 3.0 * A * A / 8.0;
  const double q = C - A * B / 2.0 + A * A * A / 8.0;
  const double r = D - A * C / 4.0 + A * A * B / 16.0 - 3.0 * A * A * A * A / 256.0;
  const double shift = -A / 4.0;

  const double m = cubic_largest_root(2.0 * p, p * p - 4.0 * r, -q * q);
  if (m > 0) {
    const double s = std::sqrt(m);
    const double u = 0.5 * (p + m - q / s);
    const double v = 0.5 * (p + m + q / s);
    push_quadratic(s, u, out);
    push_quadratic(-s, v, out + 2);
  } else {
    // q is (numerically) zero: biquadratic t^4 + p t^2 + r
    std::complex<double> z[2];
    push_quadratic(p, r, z);
    out[0] = std::sqrt(z[0]);
    out[1] = -out[0];
    out[2] = std::sqrt(z[1]);
    out[3] = -out[2];
  }
  for (int i = 0; i < 4; ++i) out[i] += shift;
}

double horner_polish(const QuarticCoeffs& c, double x) {
  double best_x = x;
  double best_f = std::fabs(evaluate(c, x));
  for (int i = 0; i < kPolishIters && best_f != 0; ++i) {
    const double f = evaluate(c, x);
    const double df = derivative(c, x);
    if (df == 0) break;
    const double nx = x - f / df;
    if (nx == x) break;
    x = nx;
    const double fx = std::fabs(evaluate(c, x));
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return best_x;
}

// All real-root candidates, possibly with duplicates, written into out
// (capacity >= 5).  Roots outside [min_needed, max_needed] may be skipped.
std::size_t root_candidates(const QuarticCoeffs& c, double min_needed, double max_needed,
                            double* out) {
  std::size_t cnt = 0;
  if (c.from_sums) {
    const FactoredQuartic fq = factored_from(c);
    if (fq.m2d == 0) {
      // equal-components family: psi = t^2 ((t - S2)^2 - k mu^2)
      const double root = std::sqrt(fq.m2k);
      out[cnt++] = 0.0;
      out[cnt++] = fq.s2 - root;
      out[cnt++] = fq.s2 + root;
      return cnt;
    }
    const double lam0 = fq.s2 / (1.0 + std::cbrt(fq.s1sq / fq.d));
    const double f0 = fq.eval(lam0);
    if (f0 == 0) {
      out[cnt++] = lam0;
    } else if (f0 > 0) {
      // the two inner roots straddle lam0; the lower one is skippable when
      // the query window cannot reach below lam0
      if (min_needed < lam0 && fq.eval(0.0) < 0)
        out[cnt++] = bracketed_root(fq, 0.0, lam0);
      // for small mu the upper root sits near S2 - w0 with
      // w0^2 (S2^2 - k mu^2) = mu^2 S1^2 S2; seeding Newton there makes the
      // solve O(1) iterations in the common case
      double seed = std::numeric_limits<double>::quiet_NaN();
      const double denom = fq.s2 * fq.s2 - fq.m2k;
      if (denom > 0) seed = fq.s2 - c.mu * c.s1 * std::sqrt(fq.s2 / denom);
      out[cnt++] = bracketed_root(fq, lam0, fq.s2, seed);
    }
    if (min_needed < 0.0 || max_needed > fq.s2) {
      const double bound =
          1.0 + std::max({std::fabs(c.a0), std::fabs(c.a1), std::fabs(c.a2), std::fabs(c.a3)});
      out[cnt++] = bracketed_root(fq, -bound, 0.0);
      out[cnt++] = bracketed_root(fq, fq.s2, bound);
    }
    return cnt;
  }
  std::complex<double> z[4];
  ferrari_roots(c, z);
  for (int i = 0; i < 4; ++i)
    if (std::fabs(z[i].imag()) <= kImagTol * (1.0 + std::fabs(z[i].real())))
      out[cnt++] = horner_polish(c, z[i].real());
  return cnt;
}

}  // namespace

std::size_t interval_roots_buf(const QuarticCoeffs& c, double lo, double hi, double* roots,
                               double* residuals) {
  if (!(lo < hi)) return 0;
  double cand[5];
  std::size_t cnt = root_candidates(c, lo, hi, cand);
  std::size_t in = 0;
  for (std::size_t i = 0; i < cnt; ++i)
    if (cand[i] > lo && cand[i] < hi) cand[in++] = cand[i];
  std::sort(cand, cand + in);
  double kept[5];
  std::size_t nk = 0;
  const double merge = kRootMergeTol * hi;
  for (std::size_t i = 0; i < in; ++i) {
    const double r = cand[i];
    if (nk > 0 && r - kept[nk - 1] <= merge) {
      if (std::fabs(evaluate(c, r)) < std::fabs(evaluate(c, kept[nk - 1]))) kept[nk - 1] = r;
      continue;
    }
    kept[nk++] = r;
  }
  if (nk > kMaxIntervalRoots)
    throw PolishDivergenceError("more distinct interval roots than a quartic admits");
  for (std::size_t i = 0; i < nk; ++i) {
    const double res = std::fabs(evaluate(c, kept[i]));
    if (!residual_ok(c, kept[i], res))
      throw PolishDivergenceError("root polishing missed the residual criterion");
    roots[i] = kept[i];
    residuals[i] = res;
  }
  return nk;
}

IntervalRoots roots_in_interval(const QuarticCoeffs& c, double lo, double hi) {
  double roots[kMaxIntervalRoots];
  double residuals[kMaxIntervalRoots];
  const std::size_t n = interval_roots_buf(c, lo, hi, roots, residuals);
  IntervalRoots out;
  out.roots.assign(roots, roots + n);
  out.residuals.assign(residuals, residuals + n);
  return out;
}

std::vector<double> real_roots(const QuarticCoeffs& c) {
  const double inf = std::numeric_limits<double>::infinity();
  double cand[5];
  const std::size_t cnt = root_candidates(c, -inf, inf, cand);
  std::sort(cand, cand + cnt);
  std::vector<double> kept;
  for (std::size_t i = 0; i < cnt; ++i) {
    const double r = cand[i];
    if (!kept.empty() && r - kept.back() <= kRootMergeTol * (1.0 + std::fabs(r))) {
      if (std::fabs(evaluate(c, r)) < std::fabs(evaluate(c, kept.back()))) kept.back() = r;
      continue;
    }
    kept.push_back(r);
  }
  for (double r : kept) {
    if (!residual_ok(c, r, evaluate(c, r)))
      throw PolishDivergenceError("root polishing missed the residual criterion");
  }
  return kept;
}

}  // namespace l1l2
