#pragma once

#include <cstddef>
#include <vector>

#include "l1l2prox/errors.hpp"

namespace l1l2 {

// Monic quartic psi(x) = x^4 + a3 x^3 + a2 x^2 + a1 x + a0.
//
// When built by coeffs_from_sums the originating sums are kept alongside the
// coefficients.  Near the interesting root the expanded coefficients lose up
// to ten digits to cancellation for small mu, while the factored form
//
//   psi(t) = t^2 (S2-t)^2 - mu^2 [ k (S2-t)^2 + S1^2 (2t - S2) ]
//
// evaluated from the sums is accurate to machine precision, so the solver
// uses it whenever the provenance is present.
struct QuarticCoeffs {
  double a0 = 0;
  double a1 = 0;
  double a2 = 0;
  double a3 = 0;
  double a4 = 1;

  bool from_sums = false;
  std::size_t k = 0;
  double s1 = 0;
  double s2 = 0;
  double mu = 0;
};

inline constexpr double kResidualTol = 1e-10;
inline constexpr double kCauchySchwarzSlack = 1e-12;
inline constexpr double kRootMergeTol = 1e-9;

// Horner evaluation of psi and psi'.
double evaluate(const QuarticCoeffs& c, double x);
double derivative(const QuarticCoeffs& c, double x);

// Scale for the relative residual test at x:
// max(1, |a0|, |a1 x|, |a2 x^2|, |a3 x^3|, x^4).
double residual_scale(const QuarticCoeffs& c, double x);

// A root r is accepted when |psi(r)| <= kResidualTol * residual_scale(c, r).
bool residual_ok(const QuarticCoeffs& c, double r, double psi_r);

// Stationarity quartic for support size k of the sorted sphere problem,
// built from S1 = ||ybar[:k]||_1 and S2 = ||ybar[:k]||_2^2:
//
//   psi(t) = t^4 - 2 S2 t^3 + (S2^2 - k mu^2) t^2
//            + 2 mu^2 (k S2 - S1^2) t - mu^2 S2 (k S2 - S1^2)
//
// Requires k >= 2, S1 > 0, S2 > 0, mu >= 0 and S1^2 <= k*S2 up to a
// relative slack of kCauchySchwarzSlack (throws CauchySchwarzError beyond
// it; smaller violations are clamped to equality).
QuarticCoeffs coeffs_from_sums(std::size_t k, double s1, double s2, double mu);

// Distinct real roots strictly inside (lo, hi), ascending, with the
// attained |psi(root)| per root.  Roots closer than kRootMergeTol*hi are
// merged.  Throws PolishDivergenceError when a root inside the interval
// cannot be polished to the residual criterion.
struct IntervalRoots {
  std::vector<double> roots;
  std::vector<double> residuals;
};

IntervalRoots roots_in_interval(const QuarticCoeffs& c, double lo, double hi);

// Allocation-free variant for hot loops: writes up to kMaxIntervalRoots
// roots (and their |psi| residuals) into caller buffers of that capacity
// and returns the count.  Same acceptance rules as roots_in_interval.
inline constexpr std::size_t kMaxIntervalRoots = 4;
std::size_t interval_roots_buf(const QuarticCoeffs& c, double lo, double hi, double* roots,
                               double* residuals);

// All distinct real roots, ascending.  Same polishing and acceptance rules
// as roots_in_interval.
std::vector<double> real_roots(const QuarticCoeffs& c);

}  // namespace l1l2
