#include "vdc/haar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace vdc {

namespace {

struct Kahan {
  double sum = 0, c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Interior hit of a point at scale j: the position m and the counting term
// |(2m+1) 2^e - a| - 2^e over denominator 2^e, where x = a/2^k, e = k-j-1.
struct InteriorHit {
  std::uint64_t m;
  int e;
  mpz_class term_num;  // always <= 0
};

std::optional<InteriorHit> classify(const DyadicRational& x, int j) {
  // Grid points of level j (exponent <= j, including 0 and 1) are boundary
  // points of their cell and contribute nothing.
  if (x.exponent() <= j) return std::nullopt;
  const int e = x.exponent() - j - 1;
  const mpz_class& a = x.numerator();
  const mpz_class mz = a >> (e + 1);
  InteriorHit hit;
  hit.m = mz.get_ui();
  hit.e = e;
  mpz_class diff = (mpz_class(2 * hit.m + 1) << e) - a;
  if (diff < 0) diff = -diff;
  hit.term_num = diff - (mpz_class(1) << e);
  return hit;
}

Rational mu_default(int j) { return Rational(mpz_class(1), mpz_class(1) << (2 * j + 2)); }

const Rational kHalf(1, 2);

}  // namespace

HaarIndex::HaarIndex(int j_, std::uint64_t m_) : j(j_), m(m_) {
  if (j < -1 || j > 62) throw std::invalid_argument("HaarIndex: scale out of range");
  if (j == -1) {
    if (m != 0) throw std::invalid_argument("HaarIndex: position must be 0 at scale -1");
  } else if (m >= (std::uint64_t{1} << j)) {
    throw std::invalid_argument("HaarIndex: position out of range");
  }
}

int haar_eval(const HaarIndex& idx, const Rational& t) {
  if (t < Rational(0) || t >= Rational(1))
    throw std::domain_error("haar_eval: t outside [0,1)");
  if (idx.j == -1) return 1;
  // Scale to u = t * 2^{j+1}; the halves are [2m, 2m+1) and [2m+1, 2m+2).
  const Rational u = t * pow2(idx.j + 1);
  const Rational lo(mpz_class(2 * idx.m));
  if (u < lo) return 0;
  if (u < lo + Rational(1)) return 1;
  if (u < lo + Rational(2)) return -1;
  return 0;
}

Rational mu_volume(const HaarIndex& idx) {
  if (idx.j < 0) throw std::invalid_argument("mu_volume: requires j >= 0");
  return -mu_default(idx.j);
}

Rational mu_counting(const PointSet& ps, const HaarIndex& idx) {
  if (idx.j < 0) throw std::invalid_argument("mu_counting: requires j >= 0");
  if (ps.empty()) throw std::domain_error("mu_counting: empty point set");
  Rational sum;
  for (const auto& x : ps.points()) {
    const auto hit = classify(x, idx.j);
    if (!hit || hit->m != idx.m) continue;
    sum += Rational(hit->term_num, mpz_class(1) << hit->e);
  }
  const mpz_class den = mpz_class(static_cast<unsigned long>(ps.size())) << (idx.j + 1);
  return sum * Rational(mpz_class(1), den);
}

Rational mu(const PointSet& ps, const HaarIndex& idx) {
  if (ps.empty()) throw std::domain_error("mu: empty point set");
  if (idx.j == -1) {
    return kHalf - ps.point_sum() / Rational(mpz_class(static_cast<unsigned long>(ps.size())));
  }
  return mu_counting(ps, idx) + mu_default(idx.j);
}

Rational mu_oracle(const DiscrepancyProfile& profile, const HaarIndex& idx) {
  if (idx.j == -1) return integrate(profile, Rational(0), Rational(1));
  const mpz_class den = mpz_class(1) << (idx.j + 1);
  const Rational lo(mpz_class(2 * idx.m), den);
  const Rational mid(mpz_class(2 * idx.m + 1), den);
  const Rational hi(mpz_class(2 * idx.m + 2), den);
  return integrate(profile, lo, mid) - integrate(profile, mid, hi);
}

Rational mu_first_vdc_formula(std::uint64_t n) {
  if (n == 0) throw std::domain_error("mu_first_vdc_formula: n must be positive");
  const int m = static_cast<int>(std::bit_width(n)) - 1;  // 2^m <= n < 2^{m+1}
  Rational sum(1);
  for (int r = 0; r < m; ++r)
    sum += nearest_int_distance(
        Rational(mpz_class(static_cast<unsigned long>(n)), mpz_class(1) << (r + 1)));
  return sum / Rational(mpz_class(2 * static_cast<unsigned long>(n)));
}

Rational max_dist_sum(int m) {
  if (m < 1) throw std::invalid_argument("max_dist_sum: requires m >= 1");
  const Rational alt(mpz_class(1), mpz_class(9) << m);
  Rational r = Rational(m, 3) + Rational(1, 9);
  return m % 2 == 0 ? r - alt : r + alt;
}

const Rational& MuLevel::at(std::uint64_t m) const {
  const auto it = std::lower_bound(
      occupied.begin(), occupied.end(), m,
      [](const auto& entry, std::uint64_t key) { return entry.first < key; });
  if (it != occupied.end() && it->first == m) return it->second;
  return default_value;
}

MuLevel computed_level(const PointSet& ps, int j) {
  if (j < 0 || j > 62) throw std::invalid_argument("computed_level: bad scale");
  if (ps.empty()) throw std::domain_error("computed_level: empty point set");
  MuLevel level;
  level.j = j;
  level.default_value = mu_default(j);

  struct Entry {
    std::uint64_t m;
    int e;
    mpz_class term;
  };
  std::vector<Entry> entries;
  int e_max = 0;
  for (const auto& x : ps.points()) {
    const auto hit = classify(x, j);
    if (!hit) continue;
    e_max = std::max(e_max, hit->e);
    entries.push_back({hit->m, hit->e, hit->term_num});
  }
  if (entries.empty()) return level;
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.m < b.m; });

  // Accumulate per position over the common denominator 2^{e_max}; only one
  // rational canonicalization happens per occupied position.
  const mpz_class scale_den =
      mpz_class(static_cast<unsigned long>(ps.size())) << (e_max + j + 1);
  std::size_t i = 0;
  while (i < entries.size()) {
    const std::uint64_t m = entries[i].m;
    mpz_class acc(0);
    for (; i < entries.size() && entries[i].m == m; ++i)
      acc += entries[i].term << (e_max - entries[i].e);
    level.occupied.emplace_back(m, Rational(acc, scale_den) + level.default_value);
  }
  return level;
}

CoefficientTable::CoefficientTable(const PointSet& ps, int j_max, std::uint64_t budget)
    : n_(ps.size()), kind_(ps.kind()), j_max_(j_max) {
  if (ps.empty()) throw std::domain_error("CoefficientTable: empty point set");
  if (j_max < -1 || j_max > 62) throw std::invalid_argument("CoefficientTable: bad j_max");
  if (j_max >= 0 &&
      (static_cast<unsigned __int128>(n_) << j_max) > static_cast<unsigned __int128>(budget))
    throw std::length_error("CoefficientTable: 2^j_max * N exceeds the budget");

  tail_exact_ = kind_ != SequenceKind::custom;
  tail_start_ = tail_exact_ ? ceil_log2(n_) : ps.max_exponent();
  mu_first_ = kHalf - ps.point_sum() / Rational(mpz_class(static_cast<unsigned long>(n_)));

  levels_.reserve(j_max + 1);
  for (int j = 0; j <= j_max; ++j) {
    if (j < tail_start_) {
      levels_.push_back(computed_level(ps, j));
    } else {
      MuLevel level;
      level.j = j;
      level.default_value = mu_default(j);
      levels_.push_back(std::move(level));
    }
  }

  // Pointwise bound on the S^2 mass above j_max when the boundary-free range
  // is not reached: per skipped level, 2^{2j} (2^{-2j-2} + cnt 2^{-j-1}/N)^2
  // with cnt the largest interior count, plus the exact geometric remainder.
  if (j_max + 1 < tail_start_) {
    double bound = 0.0;
    const double nd = static_cast<double>(n_);
    for (int j = j_max + 1; j < tail_start_; ++j) {
      std::uint64_t max_cnt = 0;
      if (tail_exact_) {
        max_cnt = n_;  // coarse bound; the named kinds never need this path with sane j_max
      } else {
        std::vector<std::uint64_t> positions;
        for (const auto& x : ps.points()) {
          const auto hit = classify(x, j);
          if (hit) positions.push_back(hit->m);
        }
        std::sort(positions.begin(), positions.end());
        std::uint64_t run = 0;
        for (std::size_t i = 0; i < positions.size(); ++i) {
          run = (i > 0 && positions[i] == positions[i - 1]) ? run + 1 : 1;
          max_cnt = std::max(max_cnt, run);
        }
      }
      const double term = std::ldexp(1.0, -2 * j - 2) +
                          static_cast<double>(max_cnt) * std::ldexp(1.0, -j - 1) / nd;
      bound += std::ldexp(term * term, 2 * j);
    }
    trunc_s2_bound_ = bound + analytic_tail(tail_start_).to_double();
  }
}

CoefficientTable mu_table(const PointSet& ps, int j_max, std::uint64_t budget) {
  return CoefficientTable(ps, j_max, budget);
}

CoefficientTable mu_table(const PointSet& ps) {
  if (ps.empty()) throw std::domain_error("mu_table: empty point set");
  return CoefficientTable(ps, ceil_log2(ps.size()) + 8, kDefaultTableBudget);
}

const MuLevel& CoefficientTable::level(int j) const {
  if (j < 0 || j > j_max_) throw std::invalid_argument("CoefficientTable::level: bad scale");
  return levels_[j];
}

Rational CoefficientTable::coefficient(const HaarIndex& idx) const {
  if (idx.j == -1) return mu_first_;
  return level(idx.j).at(idx.m);
}

Rational CoefficientTable::level_sum_squares(int j) const {
  const MuLevel& lvl = level(j);
  Rational sum;
  for (const auto& [m, value] : lvl.occupied) sum += value * value;
  const mpz_class empty = (mpz_class(1) << j) - mpz_class(static_cast<unsigned long>(lvl.occupied.size()));
  sum += Rational(empty) * lvl.default_value * lvl.default_value;
  return sum;
}

double CoefficientTable::level_sum_abs_pow(int j, double p) const {
  const MuLevel& lvl = level(j);
  Kahan sum;
  for (const auto& [m, value] : lvl.occupied)
    sum.add(std::pow(std::fabs(value.to_double()), p));
  const double empty = std::ldexp(1.0, j) - static_cast<double>(lvl.occupied.size());
  sum.add(empty * std::pow(lvl.default_value.to_double(), p));
  return sum.sum;
}

Rational analytic_tail(int from_scale) {
  // sum_{j >= J} 2^{-2j-4} * 2^{2j} ... collapses to 2^{-2J-2}/3.
  return Rational(mpz_class(1), mpz_class(3) << (2 * from_scale + 2));
}

Rational parseval_l2(const CoefficientTable& table) {
  if (!table.tail_exact())
    throw std::domain_error("parseval_l2: analytic tail unavailable for this table");
  if (table.j_max() < ceil_log2(table.n()) - 1)
    throw std::domain_error("parseval_l2: table too shallow, need j_max >= ceil(log2 N) - 1");
  Rational sum = table.mu_first() * table.mu_first();
  for (int j = 0; j <= table.j_max(); ++j)
    sum += Rational(mpz_class(1) << j) * table.level_sum_squares(j);
  return sum + analytic_tail(table.j_max() + 1);
}

namespace {

bool tail_covered(const CoefficientTable& table) {
  return table.j_max() + 1 >= table.tail_start();
}

// Per-cell S^2 at resolution 2^{-(j_max+1)} via difference arrays: every cell
// starts from the all-default baseline and occupied entries splat their delta
// over the cells they cover.
template <typename Num, typename FromRational>
std::vector<Num> square_cells(const CoefficientTable& table, bool fold_tail,
                              FromRational conv) {
  const int W = table.j_max() + 1;
  if (W > 22) throw std::length_error("square function: cell grid too fine");
  const std::size_t cells = std::size_t{1} << W;

  Num base = conv(table.mu_first() * table.mu_first());
  for (int j = 0; j <= table.j_max(); ++j) {
    // Default contribution of level j: 2^{2j} * (2^{-2j-2})^2 = 2^{-2j-4}.
    base = base + conv(Rational(mpz_class(1), mpz_class(1) << (2 * j + 4)));
  }
  if (fold_tail) base = base + conv(analytic_tail(table.j_max() + 1));

  std::vector<Num> diff(cells + 1, Num(0));
  diff[0] = base;
  for (int j = 0; j <= table.j_max(); ++j) {
    const MuLevel& lvl = table.level(j);
    const int shift = W - j;
    const Rational def_sq = lvl.default_value * lvl.default_value;
    for (const auto& [m, value] : lvl.occupied) {
      const Rational delta_r = Rational(mpz_class(1) << (2 * j)) * (value * value - def_sq);
      const Num delta = conv(delta_r);
      diff[m << shift] = diff[m << shift] + delta;
      diff[(m + 1) << shift] = diff[(m + 1) << shift] - delta;
    }
  }
  std::vector<Num> cells_out(cells, Num(0));
  Num run(0);
  for (std::size_t q = 0; q < cells; ++q) {
    run = run + diff[q];
    cells_out[q] = run;
  }
  return cells_out;
}

}  // namespace

SquareFunctionNorm square_function_norm(const CoefficientTable& table, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("square_function_norm: p must be a finite real > 1");
  const bool fold = tail_covered(table);
  const auto cells =
      square_cells<double>(table, fold, [](const Rational& r) { return r.to_double(); });
  const double cell_width = std::ldexp(1.0, -(table.j_max() + 1));
  Kahan sum;
  for (const double s2 : cells) sum.add(std::pow(s2, p / 2.0) * cell_width);
  SquareFunctionNorm out;
  out.value = std::pow(sum.sum, 1.0 / p);
  out.truncation_bound = fold ? 0.0 : std::sqrt(table.truncation_s2_bound());
  return out;
}

Rational square_function_l2_exact(const CoefficientTable& table) {
  if (!tail_covered(table))
    throw std::domain_error(
        "square_function_l2_exact: table does not reach the boundary-free scales");
  const auto cells =
      square_cells<Rational>(table, true, [](const Rational& r) { return r; });
  Rational sum;
  for (const auto& s2 : cells) sum += s2;
  return sum * pow2(-(table.j_max() + 1));
}

double theorem_chain_bound(const CoefficientTable& table, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("theorem_chain_bound: p must be a finite real > 1");
  const Rational& mu0 = table.mu_first();
  double chain = (mu0 * mu0).to_double();
  for (int j = 0; j <= table.j_max(); ++j) {
    // || sum_m mu^2 1_{I_{j,m}} ||_{L_{p/2}} = (2^{-j} sum_m |mu|^p)^{2/p}.
    const double lp_half =
        std::pow(std::ldexp(table.level_sum_abs_pow(j, p), -j), 2.0 / p);
    chain += std::ldexp(lp_half, 2 * j);
  }
  if (tail_covered(table)) chain += analytic_tail(table.j_max() + 1).to_double();
  return chain;
}

Rational theorem_chain_bound_exact2(const CoefficientTable& table) {
  if (!tail_covered(table))
    throw std::domain_error("theorem_chain_bound_exact2: analytic tail unavailable");
  // At p = 2 the level norms are plain integrals: 2^{2j} * 2^{-j} sum_m mu^2,
  // so the chain sum equals the Parseval sum.
  Rational sum = table.mu_first() * table.mu_first();
  for (int j = 0; j <= table.j_max(); ++j)
    sum += Rational(mpz_class(1) << j) * table.level_sum_squares(j);
  return sum + analytic_tail(table.j_max() + 1);
}

Rational chain_bound_rhs_exact(std::uint64_t n) {
  if (n == 0) throw std::domain_error("chain_bound_rhs_exact: n must be positive");
  const int j0 = ceil_log2(n);
  const mpz_class n2 = mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n);
  return Rational(mpz_class(1), 4 * n2) + Rational(mpz_class(4 * j0), n2) +
         Rational(mpz_class(1), mpz_class(3) << (2 * j0 + 2));
}

double chain_bound_rhs(std::uint64_t n) {
  if (n == 0) throw std::domain_error("chain_bound_rhs: n must be positive");
  const double nd = static_cast<double>(n);
  const int j0 = ceil_log2(n);
  return 0.25 / (nd * nd) + 4.0 * (std::log2(nd) + 1.0) / (nd * nd) +
         std::ldexp(1.0, -2 * j0) / 12.0;
}

BoundReport coefficient_bound_report(SequenceKind kind, std::uint64_t n, int J) {
  if (kind == SequenceKind::custom)
    throw std::invalid_argument("coefficient_bound_report: named kinds only");
  if (n == 0) throw std::domain_error("coefficient_bound_report: n must be positive");
  const PointSet ps = kind == SequenceKind::vdc        ? vdc_prefix(n)
                      : kind == SequenceKind::reflected ? reflected_prefix(n)
                                                        : sym_prefix(n);
  const int cutoff = ceil_log2(n);
  BoundReport report;
  const auto note_margin = [&](const Rational& slack) {
    if (slack < Rational(0)) ++report.violations;
    if (!report.worst_margin || slack < *report.worst_margin) report.worst_margin = slack;
  };

  // j = -1: exact first-coefficient laws.
  const Rational mu0 = mu(ps, HaarIndex(-1, 0));
  if (kind == SequenceKind::vdc) {
    ++report.checked;
    if (mu0 != mu_first_vdc_formula(n)) ++report.violations;
  } else if (kind == SequenceKind::sym) {
    ++report.checked;
    const std::uint64_t half = n / 2;
    const Rational expected =
        n % 2 == 0 ? Rational(0)
                   : Rational(1, 2) / Rational(mpz_class(static_cast<unsigned long>(n))) -
                         radical_inverse(half).to_rational() /
                             Rational(mpz_class(static_cast<unsigned long>(n)));
    if (mu0 != expected) ++report.violations;
    ++report.checked;
    note_margin(Rational(mpz_class(1), mpz_class(2 * static_cast<unsigned long>(n))) - abs(mu0));
  }

  const Rational inv_n(mpz_class(1), mpz_class(static_cast<unsigned long>(n)));
  for (int j = 0; j <= J; ++j) {
    const MuLevel lvl = computed_level(ps, j);
    const Rational def = lvl.default_value;
    if (j < cutoff) {
      // Coarse scales: |mu| <= 2^{-j}/N (plain and reflected), 2^{-(j-1)}/N
      // (symmetrized).
      Rational bound = Rational(mpz_class(1), mpz_class(1) << j) * inv_n;
      if (kind == SequenceKind::sym) bound = bound * Rational(2);
      for (const auto& [m, value] : lvl.occupied) {
        ++report.checked;
        note_margin(bound - abs(value));
      }
      const std::uint64_t empty =
          (std::uint64_t{1} << j) - lvl.occupied.size();
      if (empty > 0) {
        // All empty positions share the default coefficient; one slack
        // stands for all of them.
        report.checked += empty;
        const Rational slack = bound - def;
        if (slack < Rational(0)) report.violations += empty - 1;
        note_margin(slack);
      }
    } else {
      // Fine scales: |mu| = 2^{-2j-2} exactly.
      for (const auto& [m, value] : lvl.occupied) {
        ++report.checked;
        if (abs(value) != def) ++report.violations;
      }
      report.checked += (std::uint64_t{1} << j) - lvl.occupied.size();
    }
  }
  return report;
}

}  // namespace vdc
