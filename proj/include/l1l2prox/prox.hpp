#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "l1l2prox/core.hpp"
#include "l1l2prox/quartic.hpp"

namespace l1l2 {

// naive recomputes prefix sums per support size and evaluates the sphere
// objective directly on the built direction; optimized keeps running sums,
// prunes non-existent supports and uses the closed-form objective.  Both
// return the same candidate set up to floating-point noise.
enum class Mode { naive, optimized };

inline constexpr double kPositivityTol = 1e-12;

// Tolerance for the zero-versus-nonzero equality branch: the two sides tie
// when they agree within kTieRel*(1 + |F_best|).
inline constexpr double kTieRel = 1e-9;

// Tolerance for gathering same-objective candidates across support sizes:
// min(kGatherRel*(1 + |F_best|), kGatherAbs).  Exact structural ties agree
// to ~1e-15*|F|, so both gates pass them with orders of magnitude to
// spare.  The caps matter on large random inputs: |F| grows like n/2 while
// the F gaps between neighboring supports near the argmin shrink below
// 1e-10, and a looser gate would declare hundreds of distinct values tied
// and force that many length-n members to be built.
inline constexpr double kGatherRel = 1e-12;
inline constexpr double kGatherAbs = 1e-10;

struct PrefixSums {
  double s1 = 0;  // ||ybar[:k]||_1
  double s2 = 0;  // ||ybar[:k]||_2^2
};

// Local minimizer of the sphere objective restricted to support size k, in
// sorted coordinates.  u has size k, positive non-increasing entries and
// unit norm.  lambda_star is the quartic root it was built from (NaN for
// k == 1, which needs no quartic).  f_value is the sphere objective
// -0.5*<ybar[:k], u>^2 + mu*||u||_1.
struct Candidate {
  std::size_t k = 0;
  double lambda_star = 0;
  std::vector<double> u;
  double f_value = 0;
};

// The O(1) part of a candidate; enough to select winners without holding
// any length-k vector.
struct CandidateSummary {
  std::size_t k = 0;
  double lambda_star = 0;
  double f_value = 0;
};

// Per-support-size trace of a scan.  Optional fields are absent when the
// stage that computes them was not reached (pruned, no root, positivity
// failure).  lambda_minor is the smaller of two interval roots when both
// exist; the candidate always uses the larger.
struct KRecord {
  std::size_t k = 0;
  double a_k = 0;
  bool exists = false;
  std::optional<double> lambda_star;
  std::optional<double> lambda_minor;
  std::optional<double> f_value;
  std::optional<double> q_value;
  bool polish_failed = false;
};

struct SweepDiagnostics {
  std::vector<KRecord> records;
  // set by the scan even when records are not kept
  bool polish_failure_seen = false;

  bool any_polish_failure() const;
};

struct ScanResult {
  std::vector<CandidateSummary> found;  // ascending k
  SweepDiagnostics diagnostics;
  double y_norm2sq = 0;
};

// Existence statistic A_k = ((k S2 - S1^2)^(1/3) + S1^(2/3)) / S2.
// A candidate with support k exists iff A_k <= mu^(-2/3); equality sits on
// the boundary and is adjudicated by the root and positivity checks.
double pruning_statistic(std::size_t k, double s1, double s2);
bool existence_test(std::size_t k, double s1, double s2, double mu);

// Sphere objective of the candidate through its root, without forming u:
//
//   F = -0.5 mu^2 S1^2 / (S2 - t)^2
//       + mu^2 (S1^2 - k (S2 - t)) / (t (S2 - t)),   t = lambda_star,
//
// divided through by the attained norm of the implied direction, which is 1
// up to the accuracy of the root.
double f_value_fast(std::size_t k, double lambda_star, double s1, double s2, double mu);

// Builds the candidate for one support size, or nullopt when none exists.
// sums must cover ybar[:k].  When polish_failed is given it is set instead
// of letting PolishDivergenceError escape.
std::optional<Candidate> candidate_for_k(std::size_t k, const CanonicalForm& canon,
                                         const PrefixSums& sums, double mu,
                                         bool* polish_failed = nullptr);

// One pass over k = 1..n producing summaries and the full diagnostic
// trace.  O(n) total work in optimized mode.  with_diagnostics=false skips
// the per-k records (the flags in SweepDiagnostics stay accurate), saving
// the dominant allocation on large inputs.
ScanResult scan_candidates(const CanonicalForm& canon, double mu, Mode mode,
                           bool with_diagnostics = true);

// Expands a summary into a full candidate (builds u).
Candidate materialize(const CanonicalForm& canon, const CandidateSummary& s, double mu);

struct Enumeration {
  std::vector<Candidate> candidates;  // ascending k
  SweepDiagnostics diagnostics;
};

Enumeration enumerate_candidates(const CanonicalForm& canon, double mu, Mode mode);

// Compares the best candidate objective against the value mu*a at zero and
// assembles the arg-min set.  The zero comparison uses kTieRel, candidate
// gathering uses kGatherRel; either kind of tie produces a set-valued
// result.
ProxResult select(std::span<const CandidateSummary> found, const CanonicalForm& canon,
                  const ProxProblem& p);
ProxResult select(std::span<const Candidate> candidates, const CanonicalForm& canon,
                  const ProxProblem& p);

// Full pipeline: validate, canonicalize, scan (optimized), select.
// Throws PolishDivergenceError if any support size failed to polish.
ProxResult prox(const ProxProblem& p);

}  // namespace l1l2
