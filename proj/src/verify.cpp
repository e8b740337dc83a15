#include "vdc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vdc/haar.hpp"

namespace vdc {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string suite) : start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(suite);
  }

  void check(bool ok, const std::string& witness) {
    ++report_.checks;
    if (ok) return;
    ++report_.failure_count;
    if (report_.failures.size() < kMaxWitnesses) report_.failures.push_back(witness);
  }

  void bulk_pass(std::uint64_t count) { report_.checks += count; }

  VerifyReport finish() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    report_.seconds = std::chrono::duration<double>(elapsed).count();
    return std::move(report_);
  }

 private:
  VerifyReport report_;
  std::chrono::steady_clock::time_point start_;
};

PointSet make_prefix(SequenceKind kind, std::uint64_t n) {
  switch (kind) {
    case SequenceKind::vdc: return vdc_prefix(n);
    case SequenceKind::reflected: return reflected_prefix(n);
    case SequenceKind::sym: return sym_prefix(n);
    default: throw std::invalid_argument("make_prefix: named kinds only");
  }
}

std::string witness(SequenceKind kind, std::uint64_t n, int j, std::uint64_t m) {
  std::ostringstream os;
  os << "(kind=" << to_string(kind) << ",N=" << n << ",j=" << j << ",m=" << m << ")";
  return os.str();
}

}  // namespace

VerifyReport verify_phi(std::uint64_t n_max, int j_max) {
  Recorder rec("phi");

  // Scaling: phi(2^j s) = phi(s) / 2^j.
  for (int j = 0; j <= std::min(10, j_max); ++j) {
    for (std::uint64_t s = 0; s <= 4 * n_max; ++s) {
      if (s > (std::uint64_t{1} << (62 - j))) break;
      rec.check(radical_inverse(s << j) == radical_inverse(s).div_pow2(j),
                "(scaling j=" + std::to_string(j) + ",s=" + std::to_string(s) + ")");
    }
  }

  // Inversion: phi(2^j phi(m)) = m / 2^j.
  for (int j = 0; j <= std::min(12, j_max); ++j) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << j); ++m) {
      const std::uint64_t scaled = reverse_bits(m, j);  // = 2^j phi(m), an integer
      rec.check(radical_inverse(scaled) ==
                    DyadicRational(mpz_class(static_cast<unsigned long>(m)), j),
                "(inversion j=" + std::to_string(j) + ",m=" + std::to_string(m) + ")");
    }
  }

  // Membership: the arithmetic enumeration agrees with a brute-force scan.
  {
    const std::uint64_t n_scan = 4 * n_max;
    std::vector<DyadicRational> phis;
    phis.reserve(n_scan);
    for (std::uint64_t n = 0; n < n_scan; ++n) phis.push_back(radical_inverse(n));
    for (int j = 0; j <= std::min(8, j_max); ++j) {
      std::vector<std::vector<std::uint64_t>> buckets(std::size_t{1} << j);
      for (std::uint64_t n = 0; n < n_scan; ++n) {
        const auto& x = phis[n];
        std::uint64_t m = 0;  // floor(2^j x)
        if (!x.is_zero()) {
          mpz_class scaled = x.exponent() <= j ? mpz_class(x.numerator() << (j - x.exponent()))
                                               : mpz_class(x.numerator() >> (x.exponent() - j));
          m = scaled.get_ui();
        }
        buckets[m].push_back(n);
      }
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << j); ++m)
        rec.check(points_in_dyadic_interval(j, m, n_scan) == buckets[m],
                  "(membership j=" + std::to_string(j) + ",m=" + std::to_string(m) + ")");
    }
  }

  // Partial sums of |1 - 2 phi|: closed form versus running sum, bracketing,
  // and the consecutive-pair identity.
  {
    Rational running;
    const Rational one(1), two(2);
    for (std::uint64_t A = 0; A <= 16 * n_max; ++A) {
      running += abs(one - two * radical_inverse(A).to_rational());
      const Rational closed = abs_reflect_sum(A);
      rec.check(closed == running, "(A=" + std::to_string(A) + ")");
      const Rational half_a(mpz_class(static_cast<unsigned long>(A)), mpz_class(2));
      rec.check(half_a <= closed && closed <= half_a + one,
                "(sum-bound A=" + std::to_string(A) + ")");
    }
    for (std::uint64_t n = 0; n <= 8 * n_max; ++n) {
      const Rational lhs = abs(one - two * radical_inverse(2 * n).to_rational()) +
                           abs(one - two * radical_inverse(2 * n + 1).to_rational());
      rec.check(lhs == one, "(pairing n=" + std::to_string(n) + ")");
    }
  }

  // Injectivity: phi maps [0, 2^k) onto {m / 2^k}.
  for (int k = 0; k <= std::min(12, j_max); ++k) {
    std::vector<bool> seen(std::size_t{1} << k, false);
    bool ok = true;
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << k); ++n) {
      const std::uint64_t r = reverse_bits(n, k);
      if (seen[r]) ok = false;
      seen[r] = true;
    }
    rec.check(ok, "(injectivity k=" + std::to_string(k) + ")");
  }

  return rec.finish();
}

VerifyReport verify_mu_first(std::uint64_t n_max, int j_max) {
  Recorder rec("mu-first");
  const std::uint64_t n_big = 8 * n_max;

  // Plain sequence: closed form versus the direct mean.
  {
    Rational sum;
    for (std::uint64_t n = 1; n <= n_big; ++n) {
      sum += radical_inverse(n - 1).to_rational();
      const Rational direct =
          Rational(1, 2) - sum / Rational(mpz_class(static_cast<unsigned long>(n)));
      rec.check(mu_first_vdc_formula(n) == direct, "(mu-first-vdc N=" + std::to_string(n) + ")");
    }
  }

  // Symmetrized sequence: 0 for even N, 1/(2N) - phi(M)/N for N = 2M+1, and
  // |mu| <= 1/(2N) in the odd case.
  {
    Rational sum;
    for (std::uint64_t n = 1; n <= n_big; ++n) {
      const DyadicRational phi = radical_inverse((n - 1) / 2);
      sum += (n % 2 == 1 ? phi : phi.reflected()).to_rational();
      const Rational nz(mpz_class(static_cast<unsigned long>(n)));
      const Rational mu0 = Rational(1, 2) - sum / nz;
      if (n % 2 == 0) {
        rec.check(mu0.is_zero(), "(lemma2-even N=" + std::to_string(n) + ")");
      } else {
        const Rational expected =
            Rational(1, 2) / nz - radical_inverse(n / 2).to_rational() / nz;
        rec.check(mu0 == expected, "(lemma2-odd N=" + std::to_string(n) + ")");
        rec.check(abs(mu0) <= Rational(1, 2) / nz,
                  "(lemma2-bound N=" + std::to_string(n) + ")");
      }
    }
  }

  // Windowed maxima of the nearest-integer sums versus the closed form.
  for (int m = 1; m <= j_max; ++m) {
    Rational best;
    for (std::uint64_t n = std::uint64_t{1} << m; n < (std::uint64_t{1} << (m + 1)); ++n) {
      Rational s;
      for (int r = 0; r < m; ++r)
        s += nearest_int_distance(
            Rational(mpz_class(static_cast<unsigned long>(n)), mpz_class(1) << (r + 1)));
      if (s > best) best = s;
    }
    rec.check(best == max_dist_sum(m), "(max-dist-sum m=" + std::to_string(m) + ")");
  }

  return rec.finish();
}

VerifyReport verify_decomposition(std::uint64_t n_max, int /*j_max*/) {
  Recorder rec("decomposition");
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    const mpz_class mm(static_cast<unsigned long>(m));
    const DiscrepancyProfile plain = build_profile(vdc_prefix(m));
    const DiscrepancyProfile plain1 = build_profile(vdc_prefix(m + 1));
    const DiscrepancyProfile refl = build_profile(reflected_prefix(m));

    const DiscrepancyProfile even =
        combine({{Rational(1, 2), plain}, {Rational(1, 2), refl}});
    rec.check(even == build_profile(sym_prefix(2 * m)),
              "(decomposition-even M=" + std::to_string(m) + ")");

    const DiscrepancyProfile odd = combine({{Rational(mm + 1, 2 * mm + 1), plain1},
                                            {Rational(mm, 2 * mm + 1), refl}});
    rec.check(odd == build_profile(sym_prefix(2 * m + 1)),
              "(decomposition-odd M=" + std::to_string(m) + ")");
  }
  return rec.finish();
}

VerifyReport verify_coefficient_bounds(std::uint64_t n_max, int j_max) {
  Recorder rec("coefficient-bounds");
  const SequenceKind kinds[] = {SequenceKind::vdc, SequenceKind::reflected,
                                SequenceKind::sym};

  // mu versus the integration oracle, level by level, exhaustively.
  for (const SequenceKind kind : kinds) {
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(n_max, 256); ++n) {
      const PointSet ps = make_prefix(kind, n);
      const DiscrepancyProfile profile = build_profile(ps);
      rec.check(mu(ps, HaarIndex(-1, 0)) == mu_oracle(profile, HaarIndex(-1, 0)),
                witness(kind, n, -1, 0));
      for (int j = 0; j <= std::min(9, j_max); ++j) {
        const MuLevel lvl = computed_level(ps, j);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << j); ++m)
          rec.check(lvl.at(m) == mu_oracle(profile, HaarIndex(j, m)),
                    witness(kind, n, j, m));
      }
    }
  }

  // Seeded random samples beyond the exhaustive range.
  {
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int i = 0; i < 500; ++i) {
      const SequenceKind kind = kinds[rng() % 3];
      const std::uint64_t n = 1 + rng() % (4 * n_max);
      const int j = -1 + static_cast<int>(rng() % (std::min(14, j_max + 2) + 2));
      const std::uint64_t m = j <= 0 ? 0 : rng() % (std::uint64_t{1} << j);
      const PointSet ps = make_prefix(kind, n);
      rec.check(mu(ps, HaarIndex(j, m)) == mu_oracle(build_profile(ps), HaarIndex(j, m)),
                witness(kind, n, j, m));
    }
  }

  // Exact coarse-scale bounds and fine-scale equalities.
  for (const SequenceKind kind : kinds) {
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      const BoundReport report =
          coefficient_bound_report(kind, n, ceil_log2(n) + 4);
      rec.bulk_pass(report.checked > 0 ? report.checked - 1 : 0);
      rec.check(report.violations == 0,
                "(bound-report kind=" + std::string(to_string(kind)) +
                    ",N=" + std::to_string(n) + ")");
    }
  }

  return rec.finish();
}

VerifyReport verify_parseval(std::uint64_t n_max, int /*j_max*/) {
  Recorder rec("parseval");
  const SequenceKind kinds[] = {SequenceKind::vdc, SequenceKind::reflected,
                                SequenceKind::sym};
  for (const SequenceKind kind : kinds) {
    for (std::uint64_t n = 1; n <= n_max / 2; ++n) {
      const PointSet ps = make_prefix(kind, n);
      const CoefficientTable table = mu_table(ps, ceil_log2(n) - 1);
      rec.check(parseval_l2(table) == lp_norm_exact(build_profile(ps), 2),
                witness(kind, n, -1, 0) + " parseval");
    }
  }
  return rec.finish();
}

VerifyReport verify_chain(std::uint64_t n_max, int /*j_max*/) {
  Recorder rec("chain");
  const double p_values[] = {1.5, 3.0, 4.0};
  for (std::uint64_t n = 1; n <= 4 * n_max; ++n) {
    const PointSet ps = sym_prefix(n);
    const CoefficientTable table = mu_table(ps, ceil_log2(n) - 1);
    rec.check(theorem_chain_bound_exact2(table) <= chain_bound_rhs_exact(n),
              "(chain-exact p=2,N=" + std::to_string(n) + ")");
    const double rhs = chain_bound_rhs(n);
    for (const double p : p_values) {
      rec.check(theorem_chain_bound(table, p) <= rhs + 1e-10,
                "(chain p=" + std::to_string(p) + ",N=" + std::to_string(n) + ")");
    }
  }
  return rec.finish();
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "phi", "mu-first", "decomposition", "coefficient-bounds", "parseval", "chain"};
  return names;
}

std::vector<VerifyReport> verify_suite(const std::string& name, std::uint64_t n_max,
                                       int j_max) {
  if (name == "phi") return {verify_phi(n_max, j_max)};
  if (name == "mu-first") return {verify_mu_first(n_max, j_max)};
  if (name == "decomposition") return {verify_decomposition(n_max, j_max)};
  if (name == "coefficient-bounds") return {verify_coefficient_bounds(n_max, j_max)};
  if (name == "parseval") return {verify_parseval(n_max, j_max)};
  if (name == "chain") return {verify_chain(n_max, j_max)};
  if (name == "all") {
    std::vector<VerifyReport> reports;
    for (const auto& suite : verify_suite_names()) {
      auto sub = verify_suite(suite, n_max, j_max);
      reports.insert(reports.end(), std::make_move_iterator(sub.begin()),
                     std::make_move_iterator(sub.end()));
    }
    return reports;
  }
  throw std::invalid_argument("verify_suite: unknown suite '" + name + "'");
}

}  // namespace vdc
