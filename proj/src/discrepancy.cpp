#include "vdc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vdc {

namespace {

const Rational kZero;
const Rational kOneRational(1);

int cmp_break(const DyadicRational& b, const Rational& t) {
  const Rational r = b.to_rational();
  if (r < t) return -1;
  if (r > t) return 1;
  return 0;
}

// Index of the piece (b_i, b_{i+1}] containing t; requires 0 < t <= 1.
std::size_t piece_index(const std::vector<DyadicRational>& breaks, const Rational& t) {
  std::size_t lo = 0, hi = breaks.size() - 1;
  // Invariant: breaks[lo] < t <= breaks[hi].
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (cmp_break(breaks[mid], t) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct Kahan {
  double sum = 0, c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

DiscrepancyProfile::DiscrepancyProfile(std::vector<DyadicRational> breakpoints,
                                       std::vector<Rational> counts, std::uint64_t n)
    : n_(n) {
  if (n == 0) throw std::domain_error("DiscrepancyProfile: empty point set");
  if (breakpoints.size() < 2 || counts.size() + 1 != breakpoints.size())
    throw std::invalid_argument("DiscrepancyProfile: malformed piece lists");
  if (!breakpoints.front().is_zero() || !breakpoints.back().is_one())
    throw std::invalid_argument("DiscrepancyProfile: domain must be [0,1]");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("DiscrepancyProfile: breakpoints not increasing");
  for (std::size_t i = 0; i + 1 < counts.size(); ++i)
    if (counts[i] > counts[i + 1])
      throw std::invalid_argument("DiscrepancyProfile: counts not monotone");
  if (counts.front() < kZero || counts.back() > kOneRational)
    throw std::invalid_argument("DiscrepancyProfile: counts outside [0,1]");

  // Canonical form: merge pieces separated by a zero jump.
  breaks_.push_back(std::move(breakpoints.front()));
  counts_.push_back(std::move(counts.front()));
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] == counts_.back()) continue;
    breaks_.push_back(std::move(breakpoints[i]));
    counts_.push_back(std::move(counts[i]));
  }
  breaks_.push_back(std::move(breakpoints.back()));
}

DiscrepancyProfile build_profile(const PointSet& ps) {
  if (ps.empty()) throw std::domain_error("build_profile: empty point set");
  const std::uint64_t n = ps.size();
  const auto& order = ps.sorted_view();

  std::vector<DyadicRational> breaks;
  std::vector<Rational> counts;
  breaks.emplace_back();  // b_0 = 0
  mpz_class nz(static_cast<unsigned long>(n));
  std::uint64_t cum = 0;  // points with value <= last emitted breakpoint
  std::size_t i = 0;
  while (i < order.size()) {
    const DyadicRational& v = ps[order[i]];
    std::size_t j = i;
    while (j < order.size() && ps[order[j]] == v) ++j;
    const std::uint64_t mult = j - i;
    if (v.is_zero()) {
      cum += mult;
    } else if (!v.is_one()) {
      counts.emplace_back(mpz_class(static_cast<unsigned long>(cum)), nz);
      breaks.push_back(v);
      cum += mult;
    }
    // Points at exactly 1 never enter a count: membership in [0,t) with
    // t <= 1 excludes them.
    i = j;
  }
  counts.emplace_back(mpz_class(static_cast<unsigned long>(cum)), nz);
  breaks.push_back(DyadicRational::one());
  return DiscrepancyProfile(std::move(breaks), std::move(counts), n);
}

Rational eval(const DiscrepancyProfile& profile, const Rational& t) {
  if (t < kZero || t > kOneRational)
    throw std::domain_error("eval: t outside [0,1]");
  if (t.is_zero()) return Rational();
  const std::size_t i = piece_index(profile.breakpoints(), t);
  return profile.counts()[i] - t;
}

Rational sup_norm(const DiscrepancyProfile& profile) {
  const auto& breaks = profile.breakpoints();
  const auto& counts = profile.counts();
  Rational best;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Rational left = abs(counts[i] - breaks[i].to_rational());
    const Rational right = abs(counts[i] - breaks[i + 1].to_rational());
    if (left > best) best = left;
    if (right > best) best = right;
  }
  return best;
}

double lp_norm(const DiscrepancyProfile& profile, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::domain_error("lp_norm: p must be a finite real >= 1");
  const auto& breaks = profile.breakpoints();
  const auto& counts = profile.counts();
  Kahan total;
  const double q = p + 1.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Rational& c = counts[i];
    const Rational a = breaks[i].to_rational();
    const Rational b = breaks[i + 1].to_rational();
    const double cd = c.to_double();
    const double ad = a.to_double();
    const double bd = b.to_double();
    // The sign pattern of c - t on (a, b] is decided exactly; only the
    // antiderivative evaluations are floating point.
    if (c >= b) {
      total.add((std::pow(cd - ad, q) - std::pow(cd - bd, q)) / q);
    } else if (c <= a) {
      total.add((std::pow(bd - cd, q) - std::pow(ad - cd, q)) / q);
    } else {
      total.add((std::pow(cd - ad, q) + std::pow(bd - cd, q)) / q);
    }
  }
  return std::pow(total.sum, 1.0 / p);
}

Rational lp_norm_exact(const DiscrepancyProfile& profile, int p) {
  if (p <= 0 || p % 2 != 0)
    throw std::invalid_argument("lp_norm_exact: p must be a positive even integer (use lp_norm)");
  const auto& breaks = profile.breakpoints();
  const auto& counts = profile.counts();
  const unsigned long q = static_cast<unsigned long>(p) + 1;
  Rational total;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Rational& c = counts[i];
    total += pow(c - breaks[i].to_rational(), q) - pow(c - breaks[i + 1].to_rational(), q);
  }
  return total / Rational(static_cast<long>(q));
}

Rational l2_closed_form(const PointSet& ps) {
  if (ps.empty()) throw std::domain_error("l2_closed_form: empty point set");
  const std::uint64_t n = ps.size();
  const auto& order = ps.sorted_view();
  Rational weighted_max_sum;  // sum over ordered pairs of max(x_i, x_j)
  Rational square_sum;
  for (std::uint64_t k = 0; k < n; ++k) {
    const Rational y = ps[order[k]].to_rational();
    weighted_max_sum += Rational(mpz_class(2 * k + 1)) * y;
    square_sum += y * y;
  }
  const Rational nr(mpz_class(static_cast<unsigned long>(n)));
  return Rational(1, 3) + square_sum / nr - weighted_max_sum / (nr * nr);
}

Rational integrate(const DiscrepancyProfile& profile, const Rational& a,
                   const Rational& b) {
  if (a < kZero || b > kOneRational || a > b)
    throw std::domain_error("integrate: bad interval");
  if (a == b) return Rational();
  const auto& breaks = profile.breakpoints();
  const auto& counts = profile.counts();
  Rational total;
  std::size_t i = a.is_zero() ? 0 : piece_index(breaks, a);
  for (; i < counts.size(); ++i) {
    const Rational lo = breaks[i].to_rational();
    if (lo >= b) break;
    const Rational hi = breaks[i + 1].to_rational();
    const Rational u = lo > a ? lo : a;
    const Rational v = hi < b ? hi : b;
    if (v > u) total += counts[i] * (v - u) - (v * v - u * u) / Rational(2);
  }
  return total;
}

DiscrepancyProfile combine(
    const std::vector<std::pair<Rational, DiscrepancyProfile>>& parts) {
  if (parts.empty()) throw std::invalid_argument("combine: no profiles");
  Rational weight_sum;
  for (const auto& [w, profile] : parts) weight_sum += w;
  if (weight_sum != kOneRational)
    throw std::invalid_argument("combine: weights must sum to 1");

  std::vector<DyadicRational> merged;
  for (const auto& [w, profile] : parts)
    merged.insert(merged.end(), profile.breakpoints().begin(),
                  profile.breakpoints().end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::vector<std::size_t> idx(parts.size(), 0);
  std::vector<Rational> counts;
  counts.reserve(merged.size() - 1);
  std::uint64_t n_total = 0;
  for (const auto& [w, profile] : parts) n_total += profile.n();
  for (std::size_t piece = 0; piece + 1 < merged.size(); ++piece) {
    Rational c;
    for (std::size_t l = 0; l < parts.size(); ++l) {
      const auto& breaks = parts[l].second.breakpoints();
      while (breaks[idx[l] + 1] <= merged[piece]) ++idx[l];
      c += parts[l].first * parts[l].second.counts()[idx[l]];
    }
    counts.push_back(std::move(c));
  }
  return DiscrepancyProfile(std::move(merged), std::move(counts), n_total);
}

// ---- fixed-point fast path ------------------------------------------------

namespace {

using u128 = unsigned __int128;

inline double q63_to_double(std::uint64_t v) {
  return std::ldexp(static_cast<double>(v), -63);
}

// Walks the distinct values of a sorted q63 point list, yielding for each
// piece (v_i, v_{i+1}] the cumulative count at its left endpoint.
template <typename F>
void for_each_piece_q63(std::span<const std::uint64_t> pts, F&& f) {
  const std::uint64_t n = pts.size();
  std::uint64_t prev = 0;   // left breakpoint of the current piece
  std::uint64_t cum = 0;    // points <= prev
  std::size_t i = 0;
  while (i < n && pts[i] == 0) ++i, ++cum;
  while (i < n && pts[i] < q63::kOne) {
    const std::uint64_t v = pts[i];
    f(prev, v, cum);  // piece (prev, v]
    while (i < n && pts[i] == v) ++i, ++cum;
    prev = v;
  }
  f(prev, q63::kOne, cum);  // final piece (prev, 1]; points at 1 never count
}

}  // namespace

double sup_norm_q63(std::span<const std::uint64_t> sorted_points) {
  const std::uint64_t n = sorted_points.size();
  if (n == 0) throw std::domain_error("sup_norm_q63: empty point set");
  u128 best = 0;
  for_each_piece_q63(sorted_points, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t cum) {
    // |c - t| at both piece ends, as |cum * 2^63 - t * N| over N * 2^63.
    const u128 cnum = static_cast<u128>(cum) << 63;
    for (const std::uint64_t t : {lo, hi}) {
      const u128 tn = static_cast<u128>(t) * n;
      const u128 d = cnum > tn ? cnum - tn : tn - cnum;
      if (d > best) best = d;
    }
  });
  return static_cast<double>(best) / (static_cast<double>(n) * 9223372036854775808.0);
}

double lp_norm_q63(std::span<const std::uint64_t> sorted_points, double p) {
  const std::uint64_t n = sorted_points.size();
  if (n == 0) throw std::domain_error("lp_norm_q63: empty point set");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::domain_error("lp_norm_q63: p must be a finite real >= 1");
  Kahan total;
  const double q = p + 1.0;
  const bool p2 = p == 2.0;
  for_each_piece_q63(sorted_points, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t cum) {
    const double a = q63_to_double(lo);
    const double b = q63_to_double(hi);
    const double c = static_cast<double>(cum) / static_cast<double>(n);
    // Zero-crossing test c <=> lo/2^63, hi/2^63 done exactly in integers.
    const u128 cnum = static_cast<u128>(cum) << 63;
    const bool c_ge_hi = cnum >= static_cast<u128>(hi) * n;
    const bool c_le_lo = cnum <= static_cast<u128>(lo) * n;
    if (p2) {
      const double u = c - a, v = c - b;
      total.add((u * u * u - v * v * v) / 3.0);
    } else if (c_ge_hi) {
      total.add((std::pow(c - a, q) - std::pow(c - b, q)) / q);
    } else if (c_le_lo) {
      total.add((std::pow(b - c, q) - std::pow(a - c, q)) / q);
    } else {
      total.add((std::pow(c - a, q) + std::pow(b - c, q)) / q);
    }
  });
  return std::pow(total.sum, 1.0 / p);
}

}  // namespace vdc
