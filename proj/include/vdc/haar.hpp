#pragma once

// Haar system on [0,1), exact Haar coefficients mu_{j,m} of the local
// discrepancy (via the counting/volume split and via an independent
// piecewise-integration oracle), the square function, and the quantities
// behind the L_p chain bound.

#include <cstdint>
#include <optional>
#include <vector>

#include "vdc/discrepancy.hpp"
#include "vdc/sequences.hpp"

namespace vdc {

// Scale/position pair: j = -1 indexes the indicator of [0,1); for j >= 0 the
// support is I_{j,m} = [m/2^j, (m+1)/2^j) with m in {0, ..., 2^j - 1}.
struct HaarIndex {
  int j;
  std::uint64_t m;
  HaarIndex(int j_, std::uint64_t m_);
};

// h_{j,m}(t): +1 on the left half of I_{j,m}, -1 on the right half, 0
// outside; h_{-1,0} is the indicator of [0,1). Requires t in [0,1).
int haar_eval(const HaarIndex& idx, const Rational& t);

// Coefficient of the volume part f(t) = t: exactly -2^{-2j-2}, j >= 0.
Rational mu_volume(const HaarIndex& idx);

// Coefficient of the counting part g(t) = (1/N) #{n : x_n < t}:
//   (2^{-j-1}/N) * sum over x_n interior to I_{j,m} of (|2m+1 - 2^{j+1} x_n| - 1).
// Points exactly on the dyadic grid contribute zero. Requires j >= 0.
Rational mu_counting(const PointSet& ps, const HaarIndex& idx);

// Haar coefficient of the local discrepancy of ps: mu_counting + 2^{-2j-2}
// for j >= 0, and 1/2 - (1/N) sum x_n for j = -1.
Rational mu(const PointSet& ps, const HaarIndex& idx);

// Independent route: exact integration of the piecewise profile against
// h_{j,m}. Must agree with mu() on the same data.
Rational mu_oracle(const DiscrepancyProfile& profile, const HaarIndex& idx);

// First coefficient of the plain van der Corput prefix:
// (1/(2N)) (1 + sum_{r=0}^{m-1} ||N / 2^{r+1}||) where 2^m <= N < 2^{m+1}.
Rational mu_first_vdc_formula(std::uint64_t n);

// max_{2^m <= N < 2^{m+1}} sum_{r=0}^{m-1} ||N/2^{r+1}||
//   = m/3 + 1/9 - (-1)^m / (9 * 2^m),  m >= 1.
Rational max_dist_sum(int m);

// One fully computed scale. Positions absent from `occupied` hold the
// no-interior-point coefficient 2^{-2j-2}, so the level is complete for
// every m even though it is stored sparsely.
struct MuLevel {
  int j = 0;
  std::vector<std::pair<std::uint64_t, Rational>> occupied;  // sorted by m
  Rational default_value;

  const Rational& at(std::uint64_t m) const;
};

// Computes level j of the coefficients of ps by bucketing the interior
// points, never via the analytic fine-scale shortcut.
MuLevel computed_level(const PointSet& ps, int j);

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 30;

// Truncated coefficient table: mu_{-1,0} plus levels 0..j_max. For the three
// named kinds every level at or above ceil(log2 N) is boundary-free, so those
// levels are stored as pure defaults and the infinite tail is available in
// closed form (tail_exact). For custom point sets all requested levels are
// computed; levels at or above the largest point exponent are boundary-free
// as well, which the square-function routines exploit.
class CoefficientTable {
 public:
  CoefficientTable(const PointSet& ps, int j_max, std::uint64_t budget);

  std::uint64_t n() const { return n_; }
  SequenceKind kind() const { return kind_; }
  int j_max() const { return j_max_; }
  bool tail_exact() const { return tail_exact_; }
  // First scale from which every level is boundary-free.
  int tail_start() const { return tail_start_; }
  const Rational& mu_first() const { return mu_first_; }
  const MuLevel& level(int j) const;
  Rational coefficient(const HaarIndex& idx) const;

  // sum_m mu_{j,m}^2, exact.
  Rational level_sum_squares(int j) const;
  // sum_m |mu_{j,m}|^p, floating point.
  double level_sum_abs_pow(int j, double p) const;

  // Pointwise upper bound on the S^2 mass omitted above j_max; zero when
  // the analytic tail covers everything beyond j_max.
  double truncation_s2_bound() const { return trunc_s2_bound_; }

 private:
  std::uint64_t n_;
  SequenceKind kind_;
  int j_max_;
  bool tail_exact_;
  int tail_start_;
  Rational mu_first_;
  std::vector<MuLevel> levels_;
  double trunc_s2_bound_ = 0.0;
};

// Resource guard: rejects requests with 2^j_max * N beyond `budget`.
CoefficientTable mu_table(const PointSet& ps, int j_max,
                          std::uint64_t budget = kDefaultTableBudget);

// Default truncation depth ceil(log2 N) + 8.
CoefficientTable mu_table(const PointSet& ps);

// Geometric tail sum_{j >= from_scale} 2^{-2j-4} = 2^{-2*from_scale-2} / 3.
// This is simultaneously the Parseval mass and the pointwise S^2 mass of the
// boundary-free scales.
Rational analytic_tail(int from_scale);

// ||D||_2^2 via Parseval with the analytic fine-scale tail:
// mu_{-1,0}^2 + sum_j 2^j sum_m mu_{j,m}^2. Requires tail_exact and
// j_max >= ceil(log2 N) - 1.
Rational parseval_l2(const CoefficientTable& table);

struct SquareFunctionNorm {
  double value;
  double truncation_bound;  // additive bound on the norm; 0 when exact
};

// ||S(D_N)||_p where S aggregates 2^{2 max(0,j)} mu^2 over the dyadic cells
// of width 2^{-(j_max+1)}. When the table's levels reach the boundary-free
// range the tail is folded in exactly and truncation_bound is 0.
SquareFunctionNorm square_function_norm(const CoefficientTable& table, double p);

// Exact ||S(D_N)||_2^2 via per-cell rational aggregation plus the analytic
// tail; requires j_max >= tail_start - 1.
Rational square_function_l2_exact(const CoefficientTable& table);

// sum_{j in N_{-1}} 2^{2 max(0,j)} || sum_m mu_{j,m}^2 1_{I_{j,m}} ||_{L_{p/2}},
// the quantity whose square root dominates ||S(D_N)||_p after the Minkowski
// step. The boundary-free tail is summed analytically when available.
double theorem_chain_bound(const CoefficientTable& table, double p);

// The p = 2 instance, exact. (At p = 2 the L_{p/2} norms are plain integrals
// and the chain sum coincides with the Parseval sum.)
Rational theorem_chain_bound_exact2(const CoefficientTable& table);

// Right-hand side of the chain estimate for the symmetrized sequence.
// The exact form keeps ceil(log2 N):
//   1/(4N^2) + 4 ceil(log2 N)/N^2 + 4^{-ceil(log2 N)}/12,
// which is <= the relaxed display 1/(4N^2) + 4(log2 N + 1)/N^2 + ... used by
// chain_bound_rhs.
Rational chain_bound_rhs_exact(std::uint64_t n);
double chain_bound_rhs(std::uint64_t n);

struct BoundReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  // Smallest slack among the inequality checks; absent when only equalities
  // were checked.
  std::optional<Rational> worst_margin;
};

// Exhaustively checks every coefficient with -1 <= j <= J of the given named
// prefix against the applicable exact bound or equality (coarse-scale bound,
// fine-scale equality, and the first-coefficient laws).
BoundReport coefficient_bound_report(SequenceKind kind, std::uint64_t n, int J);

}  // namespace vdc
