#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "l1l2prox/errors.hpp"

namespace l1l2 {

// One evaluation of prox_{mu*h}(y) where h(x) = ||x||_1 / ||x||_2 for x != 0
// and h(0) = a with a in [0,1].
struct ProxProblem {
  std::vector<double> y;
  double mu = 1.0;
  double a = 1.0;
};

// Magnitudes of y sorted non-increasingly, plus the data needed to map a
// solution of the sorted problem back to the original coordinates:
//
//   sorted[i] == |y[perm[i]]|        ties keep original index order
//   signs[j]  == sign(y[j])          indexed by original position, 0 at 0
struct CanonicalForm {
  std::vector<double> sorted;
  std::vector<std::size_t> perm;
  std::vector<double> signs;

  std::size_t size() const { return sorted.size(); }

  // Number of leading strictly positive magnitudes; supports larger than
  // this would include a zero coordinate and cannot host a minimizer.
  std::size_t support_limit() const;
};

// One element of the (possibly set-valued) prox.  k == 0 marks the zero
// vector; otherwise k is the support size.
struct ProxMember {
  std::vector<double> x;
  std::size_t k = 0;
  double q = 0.0;
};

// Nonzero members come first in ascending support size; the zero member,
// when present, is last.
struct ProxResult {
  std::vector<ProxMember> members;
  bool contains_zero = false;
  bool is_set_valued = false;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm1(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x < 0 ? -x : x;
  return s;
}

inline double norm2sq(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return s;
}

// Throws NonFiniteError / BadMuError / BadAError / EmptyVectorError.
// Returns its argument so call sites can chain.
const ProxProblem& validate(const ProxProblem& p);

CanonicalForm canonicalize(std::span<const double> y);

// Maps a direction u on the sphere in the sorted coordinates (support size
// k == u.size()) back to a full vector in the original coordinates, scaled
// by the optimal radius r = <sorted[:k], u>.
std::vector<double> reconstruct(const CanonicalForm& canon, std::span<const double> u);

// Objective 0.5*||x - y||^2 + mu*h(x) with h as above.
double q_value(std::span<const double> x, const ProxProblem& p);

}  // namespace l1l2
