#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "vdc/discrepancy.hpp"

using vdc::DiscrepancyProfile;
using vdc::DyadicRational;
using vdc::PointSet;
using vdc::Rational;

namespace {

DyadicRational dy(long num, int exp) { return DyadicRational(mpz_class(num), exp); }

PointSet prefix(vdc::SequenceKind kind, std::uint64_t n) {
  switch (kind) {
    case vdc::SequenceKind::vdc: return vdc::vdc_prefix(n);
    case vdc::SequenceKind::reflected: return vdc::reflected_prefix(n);
    default: return vdc::sym_prefix(n);
  }
}

constexpr vdc::SequenceKind kKinds[] = {vdc::SequenceKind::vdc,
                                        vdc::SequenceKind::reflected,
                                        vdc::SequenceKind::sym};

// Dense-grid oracle: max |D| over the grid q * 2^-bits. Underestimates the
// supremum by at most the grid step (D is 1-Lipschitz between jumps and the
// breakpoints are on the grid).
Rational grid_max_abs(const DiscrepancyProfile& profile, int bits) {
  Rational best;
  for (std::uint64_t q = 0; q <= (std::uint64_t{1} << bits); ++q) {
    const Rational t(mpz_class(static_cast<unsigned long>(q)), mpz_class(1) << bits);
    const Rational v = vdc::abs(vdc::eval(profile, t));
    if (v > best) best = v;
  }
  return best;
}

// Midpoint-rule oracle for the integral of |D|^p; error O(step).
double lp_integral_quadrature(const DiscrepancyProfile& profile, double p, int bits) {
  double sum = 0;
  const std::uint64_t cells = std::uint64_t{1} << bits;
  for (std::uint64_t q = 0; q < cells; ++q) {
    const Rational t(mpz_class(static_cast<unsigned long>(2 * q + 1)),
                     mpz_class(1) << (bits + 1));
    sum += std::pow(std::fabs(vdc::eval(profile, t).to_double()), p);
  }
  return sum / static_cast<double>(cells);
}

}  // namespace

TEST_CASE("build_profile examples") {
  const DiscrepancyProfile p2 = vdc::build_profile(vdc::vdc_prefix(2));
  CHECK(p2.breakpoints() == std::vector<DyadicRational>{dy(0, 0), dy(1, 1), dy(1, 0)});
  CHECK(p2.counts() == std::vector<Rational>{Rational(1, 2), Rational(1)});

  const DiscrepancyProfile s2 = vdc::build_profile(vdc::sym_prefix(2));
  CHECK(s2.breakpoints() == std::vector<DyadicRational>{dy(0, 0), dy(1, 0)});
  CHECK(s2.counts() == std::vector<Rational>{Rational(1, 2)});

  const DiscrepancyProfile p1 = vdc::build_profile(vdc::vdc_prefix(1));
  CHECK(p1.breakpoints() == std::vector<DyadicRational>{dy(0, 0), dy(1, 0)});
  CHECK(p1.counts() == std::vector<Rational>{Rational(1)});

  CHECK_THROWS_AS(vdc::build_profile(PointSet({})), std::domain_error);
}

TEST_CASE("eval") {
  const DiscrepancyProfile p2 = vdc::build_profile(vdc::vdc_prefix(2));
  CHECK(vdc::eval(p2, Rational(1, 4)) == Rational(1, 4));
  CHECK(vdc::eval(p2, Rational(0)) == Rational(0));
  CHECK(vdc::eval(p2, Rational(1)) == Rational(0));
  CHECK(vdc::eval(p2, Rational(1, 2)) == Rational(0));      // c=1/2 on (0,1/2]
  CHECK(vdc::eval(p2, Rational(3, 4)) == Rational(1, 4));   // c=1 on (1/2,1]
  CHECK_THROWS_AS(vdc::eval(p2, Rational(-1, 2)), std::domain_error);
  CHECK_THROWS_AS(vdc::eval(p2, Rational(3, 2)), std::domain_error);
}

TEST_CASE("sup_norm examples") {
  CHECK(vdc::sup_norm(vdc::build_profile(vdc::vdc_prefix(1))) == Rational(1));
  CHECK(vdc::sup_norm(vdc::build_profile(vdc::vdc_prefix(2))) == Rational(1, 2));
  CHECK(vdc::sup_norm(vdc::build_profile(vdc::sym_prefix(2))) == Rational(1, 2));
}

TEST_CASE("sup_norm(vdc 2^k) = 2^-k, cross-checked on a dense grid") {
  for (int k = 0; k <= 6; ++k) {
    const DiscrepancyProfile profile = vdc::build_profile(vdc::vdc_prefix(1 << k));
    const Rational sup = vdc::sup_norm(profile);
    CHECK(sup == vdc::pow2(-k));
    const Rational grid = grid_max_abs(profile, k + 4);
    CHECK(grid <= sup);
    CHECK(sup <= grid + vdc::pow2(-k - 4));
  }
}

TEST_CASE("lp_norm examples") {
  const DiscrepancyProfile p1 = vdc::build_profile(vdc::vdc_prefix(1));
  const DiscrepancyProfile p2 = vdc::build_profile(vdc::vdc_prefix(2));
  CHECK(vdc::lp_norm(p1, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(vdc::lp_norm(p2, 2.0) == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-12));
  CHECK(vdc::lp_norm(p1, 2.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(vdc::lp_norm(p1, 0.5), std::domain_error);
}

TEST_CASE("lp_norm agrees with midpoint quadrature at a non-integer p") {
  for (const auto kind : kKinds) {
    const DiscrepancyProfile profile = vdc::build_profile(prefix(kind, 7));
    const double exact_route = vdc::lp_norm(profile, 2.5);
    const double quad = std::pow(lp_integral_quadrature(profile, 2.5, 17), 1.0 / 2.5);
    CHECK(exact_route == doctest::Approx(quad).epsilon(1e-4));
  }
}

TEST_CASE("lp_norm_exact examples") {
  const DiscrepancyProfile p1 = vdc::build_profile(vdc::vdc_prefix(1));
  const DiscrepancyProfile p2 = vdc::build_profile(vdc::vdc_prefix(2));
  const DiscrepancyProfile s2 = vdc::build_profile(vdc::sym_prefix(2));
  CHECK(vdc::lp_norm_exact(p2, 2) == Rational(1, 12));
  CHECK(vdc::lp_norm_exact(p1, 2) == Rational(1, 3));
  CHECK(vdc::lp_norm_exact(s2, 2) == Rational(1, 12));
  CHECK_THROWS_AS(vdc::lp_norm_exact(p1, 3), std::invalid_argument);
  CHECK_THROWS_AS(vdc::lp_norm_exact(p1, 0), std::invalid_argument);
}

TEST_CASE("l2_closed_form equals the profile integral") {
  CHECK(vdc::l2_closed_form(vdc::vdc_prefix(1)) == Rational(1, 3));
  CHECK(vdc::l2_closed_form(vdc::vdc_prefix(2)) == Rational(1, 12));
  CHECK(vdc::l2_closed_form(vdc::sym_prefix(4)) ==
        vdc::lp_norm_exact(vdc::build_profile(vdc::sym_prefix(4)), 2));
  std::mt19937_64 rng(42);
  for (int i = 0; i < 60; ++i) {
    const auto kind = kKinds[rng() % 3];
    const std::uint64_t n = 1 + rng() % 1024;
    const PointSet ps = prefix(kind, n);
    CHECK(vdc::l2_closed_form(ps) == vdc::lp_norm_exact(vdc::build_profile(ps), 2));
  }
}

TEST_CASE("norm consistency: float, exact, closed form") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    const auto kind = kKinds[rng() % 3];
    const std::uint64_t n = 1 + rng() % 1024;
    const PointSet ps = prefix(kind, n);
    const DiscrepancyProfile profile = vdc::build_profile(ps);
    const double f = vdc::lp_norm(profile, 2.0);
    const double e = vdc::lp_norm_exact(profile, 2).to_double();
    CHECK(f * f == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("lp_norm is monotone in p and dominated by sup_norm") {
  const double grid[] = {1.0, 1.5, 2.0, 3.0, 4.0, 8.0};
  for (const auto kind : kKinds) {
    for (const std::uint64_t n : {1ull, 3ull, 10ull, 37ull, 128ull}) {
      const DiscrepancyProfile profile = vdc::build_profile(prefix(kind, n));
      const double sup = vdc::sup_norm(profile).to_double();
      double prev = 0;
      for (const double p : grid) {
        const double v = vdc::lp_norm(profile, p);
        CHECK(v >= prev - 1e-13);
        CHECK(v <= sup + 1e-13);
        prev = v;
      }
    }
  }
}

TEST_CASE("combine reproduces the symmetrized profiles") {
  // 1/2 D_1^phi + 1/2 D_1^(1-phi) equals the N=2 symmetrized profile.
  const DiscrepancyProfile even =
      vdc::combine({{Rational(1, 2), vdc::build_profile(vdc::vdc_prefix(1))},
                    {Rational(1, 2), vdc::build_profile(vdc::reflected_prefix(1))}});
  CHECK(even == vdc::build_profile(vdc::sym_prefix(2)));

  const DiscrepancyProfile odd =
      vdc::combine({{Rational(2, 3), vdc::build_profile(vdc::vdc_prefix(2))},
                    {Rational(1, 3), vdc::build_profile(vdc::reflected_prefix(1))}});
  CHECK(odd == vdc::build_profile(vdc::sym_prefix(3)));

  for (std::uint64_t m = 1; m <= 64; ++m) {
    const mpz_class mm(static_cast<unsigned long>(m));
    CHECK(vdc::combine(
              {{Rational(1, 2), vdc::build_profile(vdc::vdc_prefix(m))},
               {Rational(1, 2), vdc::build_profile(vdc::reflected_prefix(m))}}) ==
          vdc::build_profile(vdc::sym_prefix(2 * m)));
    CHECK(vdc::combine(
              {{Rational(mm + 1, 2 * mm + 1), vdc::build_profile(vdc::vdc_prefix(m + 1))},
               {Rational(mm, 2 * mm + 1), vdc::build_profile(vdc::reflected_prefix(m))}}) ==
          vdc::build_profile(vdc::sym_prefix(2 * m + 1)));
  }
}

TEST_CASE("combine identity and validation") {
  const DiscrepancyProfile d = vdc::build_profile(vdc::vdc_prefix(5));
  CHECK(vdc::combine({{Rational(1), d}}) == d);
  CHECK_THROWS_AS(vdc::combine({{Rational(1, 2), d}}), std::invalid_argument);
  CHECK_THROWS_AS(vdc::combine({}), std::invalid_argument);
}

TEST_CASE("integrate matches piece algebra") {
  const DiscrepancyProfile p2 = vdc::build_profile(vdc::vdc_prefix(2));
  // D = 1/2 - t on (0,1/2], 1 - t on (1/2,1]; integral over [0,1] is 1/4.
  CHECK(vdc::integrate(p2, Rational(0), Rational(1)) == Rational(1, 4));
  CHECK(vdc::integrate(p2, Rational(0), Rational(1, 2)) == Rational(1, 8));
  CHECK(vdc::integrate(p2, Rational(1, 4), Rational(1, 4)) == Rational(0));
  CHECK_THROWS_AS(vdc::integrate(p2, Rational(1, 2), Rational(1, 4)), std::domain_error);
}

TEST_CASE("q63 norms agree with the exact route") {
  for (const auto kind : kKinds) {
    for (const std::uint64_t n : {1ull, 2ull, 5ull, 64ull, 257ull, 1000ull}) {
      const DiscrepancyProfile profile = vdc::build_profile(prefix(kind, n));
      auto pts = vdc::q63::prefix(kind, n);
      std::sort(pts.begin(), pts.end());
      CHECK(vdc::sup_norm_q63(pts) ==
            doctest::Approx(vdc::sup_norm(profile).to_double()).epsilon(1e-14));
      CHECK(vdc::lp_norm_q63(pts, 2.0) ==
            doctest::Approx(vdc::lp_norm(profile, 2.0)).epsilon(1e-12));
      CHECK(vdc::lp_norm_q63(pts, 3.0) ==
            doctest::Approx(vdc::lp_norm(profile, 3.0)).epsilon(1e-12));
    }
  }
}
