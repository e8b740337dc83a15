#pragma once

// Exact piecewise representation of the local discrepancy
// D_N(t) = (1/N) #{n : x_n < t} - t and its L_infinity / L_p / L_2 norms,
// plus a fixed-point fast path for large sweeps.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vdc/sequences.hpp"

namespace vdc {

// D_N on [0,1] as a step-minus-identity function: on each half-open piece
// (b_i, b_{i+1}] we have D(t) = c_i - t, and D(0) = 0. Breakpoints are
// 0 = b_0 < b_1 < ... < b_K = 1; counts c_i are exact and non-decreasing.
// Construction canonicalizes: interior breakpoints with no jump are merged,
// so equal functions have equal representations.
class DiscrepancyProfile {
 public:
  DiscrepancyProfile(std::vector<DyadicRational> breakpoints,
                     std::vector<Rational> counts, std::uint64_t n);

  const std::vector<DyadicRational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& counts() const { return counts_; }
  std::uint64_t n() const { return n_; }
  std::size_t piece_count() const { return counts_.size(); }

  // Compares the represented function (breakpoints and counts); the sample
  // count n is bookkeeping and does not participate.
  friend bool operator==(const DiscrepancyProfile& a, const DiscrepancyProfile& b) {
    return a.breaks_ == b.breaks_ && a.counts_ == b.counts_;
  }

 private:
  std::vector<DyadicRational> breaks_;
  std::vector<Rational> counts_;
  std::uint64_t n_;
};

DiscrepancyProfile build_profile(const PointSet& ps);

// Exact D_N(t) for t in [0,1].
Rational eval(const DiscrepancyProfile& profile, const Rational& t);

// Exact sup_{t in [0,1]} |D_N(t)|, one-sided limits at breakpoints included.
Rational sup_norm(const DiscrepancyProfile& profile);

// (integral of |D|^p)^(1/p) for real p >= 1. Pieces are split exactly at the
// rational zero crossing t = c_i; only the final power evaluations and the
// compensated piece summation are floating point.
double lp_norm(const DiscrepancyProfile& profile, double p);

// Exact integral of D^p (= |D|^p) for even p > 0; the p-th power of the norm.
Rational lp_norm_exact(const DiscrepancyProfile& profile, int p);

// Independent closed form for the exact integral of D^2, obtained by
// expanding the square and integrating termwise:
//   int 1_{x<t} 1_{y<t} dt = 1 - max(x,y),  int t 1_{x<t} dt = (1 - x^2)/2,
// which collapses over the sorted points to 1/3 + (sum x^2)/N
// - (sum_k (2k+1) y_k)/N^2. Cross-validates lp_norm_exact(.,2).
Rational l2_closed_form(const PointSet& ps);

// Exact integral of D over [a,b] within [0,1] (used by the Haar oracle).
Rational integrate(const DiscrepancyProfile& profile, const Rational& a,
                   const Rational& b);

// Exact pointwise affine combination on the merged breakpoint set. Weights
// must sum to 1; with weights N_i / sum(N_j) this reproduces the local
// discrepancy of the concatenated point sets.
DiscrepancyProfile combine(
    const std::vector<std::pair<Rational, DiscrepancyProfile>>& parts);

// ---- fixed-point fast path ------------------------------------------------
// Inputs are sorted q63 points (value/2^63 in [0,1]). sup_norm_q63 is exact
// (128-bit cross products) and only rounded on return; the L_p routines use
// compensated summation over pieces.

double sup_norm_q63(std::span<const std::uint64_t> sorted_points);
double lp_norm_q63(std::span<const std::uint64_t> sorted_points, double p);

}  // namespace vdc
