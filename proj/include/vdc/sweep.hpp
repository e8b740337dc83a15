#pragma once

// N-sweeps and dyadic-window statistics with CSV output. All computations
// are deterministic: identical specs produce byte-identical output.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "vdc/sequences.hpp"

namespace vdc {

// p = infinity() selects the sup norm throughout this module.
double parse_p(const std::string& text);        // "inf" or a real >= 1
std::string format_p(double p);                 // inverse of parse_p

struct SweepSpec {
  SequenceKind kind = SequenceKind::vdc;
  std::vector<double> p_list;        // deduplicated, ascending, inf last
  std::vector<std::uint64_t> n_values;  // deduplicated, ascending
  bool exact = false;
};

// Explicit N lists for the three n_spec shapes.
std::vector<std::uint64_t> n_range(std::uint64_t lo, std::uint64_t hi,
                                   std::uint64_t stride);
// `samples` evenly spaced values of [2^k, 2^{k+1}) plus both endpoints.
std::vector<std::uint64_t> window_samples(int k, std::uint64_t samples);

// L_p discrepancy of the N-point prefix in fixed-point float mode.
double discrepancy_value(SequenceKind kind, std::uint64_t n, double p);

// Scaled statistic of the disc/sweep CSV column: N v / log N for p = inf,
// N v / sqrt(log N) otherwise; NaN for N = 1 (printed as an empty field).
double scaled_statistic(double value, std::uint64_t n, double p);

// Scaled statistic of the constants command: the symmetrized sequence with
// finite p is normalized by sqrt(log N), everything else by log N.
double scaled_statistic_constants(double value, std::uint64_t n, double p,
                                  SequenceKind kind);

// Emits "kind,N,p,value,scaled" rows ordered by (N, p). In exact mode the
// value column is the exact rational (sup norm for inf, the integral of
// |D|^p for even p); otherwise the 17-digit float.
void run_sweep(const SweepSpec& spec, std::ostream& os);

struct WindowStat {
  int k = 0;
  double max_scaled = 0.0;
  std::uint64_t argmax_n = 0;
};

// Window maxima of the constants statistic over [2^k, 2^{k+1}) for
// k_min <= k <= k_max: exhaustive while 2^k <= 2^12, sampled (plus both
// endpoints) above.
std::vector<WindowStat> constants_windows(SequenceKind kind, double p, int k_min,
                                          int k_max, std::uint64_t samples);

void write_constants_csv(const std::vector<WindowStat>& stats, std::ostream& os);

}  // namespace vdc
