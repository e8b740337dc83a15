#pragma once

// Mechanical verification suites for the exact identities and bounds. Each
// suite scales with the n_max/j_max knobs; at the defaults (1024, 12) the
// suites reproduce the documented verification depth.

#include <cstdint>
#include <string>
#include <vector>

namespace vdc {

struct VerifyReport {
  std::string suite;
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;  // witnesses; capped at kMaxWitnesses
  double seconds = 0.0;

  bool ok() const { return failure_count == 0; }
};

inline constexpr std::size_t kMaxWitnesses = 25;

// Radical-inverse relations: scaling, inversion, interval membership versus
// a brute-force scan, the |1-2phi| pairing and partial-sum laws, injectivity.
VerifyReport verify_phi(std::uint64_t n_max, int j_max);

// First-coefficient laws: the closed form for the plain sequence (checked to
// 8*n_max), the symmetrized parity formula, and max_dist_sum versus brute
// force (m <= j_max).
VerifyReport verify_mu_first(std::uint64_t n_max, int j_max);

// Exact decomposition of the symmetrized local discrepancy into weighted
// plain/reflected profiles, both parities, M <= n_max.
VerifyReport verify_decomposition(std::uint64_t n_max, int j_max);

// Coefficient checks: mu versus the integration oracle (exhaustive to
// min(n_max, 256), 500 seeded samples to 4*n_max), and the exact coarse-scale
// bounds / fine-scale equalities for all three kinds to n_max.
VerifyReport verify_coefficient_bounds(std::uint64_t n_max, int j_max);

// Parseval with the analytic tail equals the direct integral of D^2, all
// kinds, N <= n_max/2.
VerifyReport verify_parseval(std::uint64_t n_max, int j_max);

// Chain quantity of the symmetrized prefix stays below its closed-form
// bound: exactly for p = 2, to 1e-10 for p in {1.5, 3, 4}; N <= 4*n_max.
VerifyReport verify_chain(std::uint64_t n_max, int j_max);

const std::vector<std::string>& verify_suite_names();

// Runs one suite by name, or all of them for "all".
std::vector<VerifyReport> verify_suite(const std::string& name, std::uint64_t n_max,
                                       int j_max);

}  // namespace vdc
