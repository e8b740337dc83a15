#include "vdc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

#include "vdc/discrepancy.hpp"

namespace vdc {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

constexpr std::uint64_t kExhaustiveWindowLimit = std::uint64_t{1} << 12;

}  // namespace

double parse_p(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid p '" + text + "'");
  }
  if (used != text.size() || !(p >= 1.0))
    throw std::invalid_argument("invalid p '" + text + "' (need inf or a real >= 1)");
  return p;
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

std::vector<std::uint64_t> n_range(std::uint64_t lo, std::uint64_t hi,
                                   std::uint64_t stride) {
  if (lo == 0 || hi < lo || stride == 0)
    throw std::invalid_argument("n_range: need 1 <= lo <= hi and stride >= 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; n += stride) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> window_samples(int k, std::uint64_t samples) {
  if (k < 1 || k > 40) throw std::invalid_argument("window_samples: bad window index");
  const std::uint64_t lo = std::uint64_t{1} << k;
  const std::uint64_t hi = (std::uint64_t{1} << (k + 1)) - 1;
  std::vector<std::uint64_t> out;
  if (samples >= lo) {
    for (std::uint64_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  // An even stride would resonate with the base-2 radix structure: every
  // sampled N would end in zero bits and the leading ||N/2^r|| terms of its
  // discrepancy would vanish, biasing window maxima low. Keep the stride odd.
  std::uint64_t stride = std::max<std::uint64_t>(1, lo / std::max<std::uint64_t>(samples, 1));
  if (stride > 1 && stride % 2 == 0) ++stride;
  for (std::uint64_t n = lo; n <= hi; n += stride) out.push_back(n);
  if (out.back() != hi) out.push_back(hi);
  return out;
}

double discrepancy_value(SequenceKind kind, std::uint64_t n, double p) {
  if (n == 0) throw std::invalid_argument("discrepancy_value: n must be positive");
  std::vector<std::uint64_t> pts = q63::prefix(kind, n);
  std::sort(pts.begin(), pts.end());
  if (std::isinf(p)) return sup_norm_q63(pts);
  return lp_norm_q63(pts, p);
}

double scaled_statistic(double value, std::uint64_t n, double p) {
  if (n <= 1) return std::numeric_limits<double>::quiet_NaN();
  const double logn = std::log(static_cast<double>(n));
  return std::isinf(p) ? static_cast<double>(n) * value / logn
                       : static_cast<double>(n) * value / std::sqrt(logn);
}

double scaled_statistic_constants(double value, std::uint64_t n, double p,
                                  SequenceKind kind) {
  if (n <= 1) return std::numeric_limits<double>::quiet_NaN();
  const double logn = std::log(static_cast<double>(n));
  const bool sqrt_scale = kind == SequenceKind::sym && !std::isinf(p);
  return static_cast<double>(n) * value / (sqrt_scale ? std::sqrt(logn) : logn);
}

void run_sweep(const SweepSpec& spec, std::ostream& os) {
  if (spec.kind == SequenceKind::custom)
    throw std::invalid_argument("run_sweep: named kinds only");
  if (spec.p_list.empty() || spec.n_values.empty())
    throw std::invalid_argument("run_sweep: empty p list or N list");

  std::vector<double> ps = spec.p_list;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<std::uint64_t> ns = spec.n_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (!ns.empty() && ns.front() == 0)
    throw std::invalid_argument("run_sweep: N must be positive");
  if (spec.exact && ns.back() > kMaxExactPoints)
    throw std::length_error("run_sweep: exact mode is limited to N <= 2^20");

  os << "kind,N,p,value,scaled\n";
  const std::string kind_name(to_string(spec.kind));
  for (const std::uint64_t n : ns) {
    std::vector<std::uint64_t> pts;
    std::unique_ptr<DiscrepancyProfile> profile;
    if (spec.exact) {
      const PointSet ps_exact = spec.kind == SequenceKind::vdc ? vdc_prefix(n)
                                : spec.kind == SequenceKind::reflected
                                    ? reflected_prefix(n)
                                    : sym_prefix(n);
      profile = std::make_unique<DiscrepancyProfile>(build_profile(ps_exact));
    } else {
      pts = q63::prefix(spec.kind, n);
      std::sort(pts.begin(), pts.end());
    }
    for (const double p : ps) {
      std::string value_text;
      double norm = 0;
      if (spec.exact) {
        if (std::isinf(p)) {
          const Rational v = sup_norm(*profile);
          value_text = v.str();
          norm = v.to_double();
        } else if (p == std::floor(p) && p <= 64.0 && static_cast<long>(p) % 2 == 0) {
          const Rational v = lp_norm_exact(*profile, static_cast<int>(p));
          value_text = v.str();
          norm = std::pow(v.to_double(), 1.0 / p);
        } else {
          norm = lp_norm(*profile, p);
          value_text = fmt17(norm);
        }
      } else {
        norm = std::isinf(p) ? sup_norm_q63(pts) : lp_norm_q63(pts, p);
        value_text = fmt17(norm);
      }
      const double scaled = scaled_statistic(norm, n, p);
      os << kind_name << ',' << n << ',' << format_p(p) << ',' << value_text << ','
         << (std::isnan(scaled) ? std::string() : fmt17(scaled)) << '\n';
    }
  }
}

std::vector<WindowStat> constants_windows(SequenceKind kind, double p, int k_min,
                                          int k_max, std::uint64_t samples) {
  if (k_min < 1 || k_max < k_min)
    throw std::invalid_argument("constants_windows: need 1 <= k_min <= k_max");
  std::vector<WindowStat> stats;
  for (int k = k_min; k <= k_max; ++k) {
    const std::uint64_t lo = std::uint64_t{1} << k;
    std::vector<std::uint64_t> ns;
    if (lo <= kExhaustiveWindowLimit) {
      ns = n_range(lo, 2 * lo - 1, 1);
    } else {
      ns = window_samples(k, samples);
    }
    WindowStat stat;
    stat.k = k;
    for (const std::uint64_t n : ns) {
      const double scaled =
          scaled_statistic_constants(discrepancy_value(kind, n, p), n, p, kind);
      if (stat.argmax_n == 0 || scaled > stat.max_scaled) {
        stat.max_scaled = scaled;
        stat.argmax_n = n;
      }
    }
    stats.push_back(stat);
  }
  return stats;
}

void write_constants_csv(const std::vector<WindowStat>& stats, std::ostream& os) {
  os << "k,window_max_scaled,argmax_N\n";
  for (const auto& s : stats)
    os << s.k << ',' << fmt17(s.max_scaled) << ',' << s.argmax_n << '\n';
}

}  // namespace vdc
