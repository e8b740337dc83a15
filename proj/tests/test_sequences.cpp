#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "vdc/sequences.hpp"

using vdc::DyadicRational;
using vdc::PointSet;
using vdc::Rational;

namespace {

DyadicRational dy(long num, int exp) { return DyadicRational(mpz_class(num), exp); }

std::vector<DyadicRational> sorted_points(const PointSet& ps) {
  std::vector<DyadicRational> v(ps.points());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("vdc_prefix examples") {
  CHECK(vdc::vdc_prefix(1).points() == std::vector<DyadicRational>{dy(0, 0)});
  CHECK(vdc::vdc_prefix(2).points() == std::vector<DyadicRational>{dy(0, 0), dy(1, 1)});
  CHECK(vdc::vdc_prefix(4).points() ==
        std::vector<DyadicRational>{dy(0, 0), dy(1, 1), dy(1, 2), dy(3, 2)});
  CHECK(vdc::vdc_prefix(0).empty());
}

TEST_CASE("reflected_prefix examples") {
  CHECK(vdc::reflected_prefix(1).points() == std::vector<DyadicRational>{dy(1, 0)});
  CHECK(vdc::reflected_prefix(2).points() ==
        std::vector<DyadicRational>{dy(1, 0), dy(1, 1)});
  CHECK(vdc::reflected_prefix(4).points() ==
        std::vector<DyadicRational>{dy(1, 0), dy(1, 1), dy(3, 2), dy(1, 2)});
}

TEST_CASE("sym_prefix examples") {
  CHECK(vdc::sym_prefix(2).points() == std::vector<DyadicRational>{dy(0, 0), dy(1, 0)});
  CHECK(vdc::sym_prefix(4).points() ==
        std::vector<DyadicRational>{dy(0, 0), dy(1, 0), dy(1, 1), dy(1, 1)});
  CHECK(vdc::sym_prefix(5).points() ==
        std::vector<DyadicRational>{dy(0, 0), dy(1, 0), dy(1, 1), dy(1, 1), dy(1, 2)});
}

TEST_CASE("sym_prefix interleaves the plain and reflected prefixes") {
  const auto check_interleaving = [](std::uint64_t m) {
    auto sym = sorted_points(vdc::sym_prefix(2 * m));
    auto plain = vdc::vdc_prefix(m).points();
    auto refl = vdc::reflected_prefix(m).points();
    plain.insert(plain.end(), refl.begin(), refl.end());
    std::sort(plain.begin(), plain.end());
    CHECK(sym == plain);
  };
  for (std::uint64_t m = 1; m <= 256; ++m) check_interleaving(m);
  for (const std::uint64_t m : {1000ull, 2048ull, 3333ull, 4096ull})
    check_interleaving(m);
}

TEST_CASE("sym_prefix(N) is a prefix of sym_prefix(N+1)") {
  const PointSet big = vdc::sym_prefix(513);
  for (std::uint64_t n = 1; n <= 512; ++n) {
    const PointSet small = vdc::sym_prefix(n);
    bool prefix = true;
    for (std::uint64_t i = 0; i < n; ++i) prefix = prefix && small[i] == big[i];
    CHECK(prefix);
  }
}

TEST_CASE("sym point sums: M for N=2M, M + phi(M) for N=2M+1") {
  for (std::uint64_t m = 0; m <= 512; ++m) {
    const Rational mm(mpz_class(static_cast<unsigned long>(m)));
    if (m >= 1) CHECK(vdc::sym_prefix(2 * m).point_sum() == mm);
    CHECK(vdc::sym_prefix(2 * m + 1).point_sum() ==
          mm + vdc::radical_inverse(m).to_rational());
  }
}

TEST_CASE("sorted_view orders points stably") {
  const PointSet ps = vdc::sym_prefix(64);
  const auto& order = ps.sorted_view();
  REQUIRE(order.size() == 64);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const auto& a = ps[order[i]];
    const auto& b = ps[order[i + 1]];
    CHECK(a <= b);
    if (a == b) CHECK(order[i] < order[i + 1]);
  }
}

TEST_CASE("PointSet validates its points") {
  CHECK_THROWS_AS(PointSet({DyadicRational(mpz_class(9), 3)}), std::invalid_argument);
  CHECK_NOTHROW(PointSet({dy(1, 0), dy(0, 0)}));
}

TEST_CASE("q63 fast mode generates the same points exactly") {
  using vdc::SequenceKind;
  for (const auto kind :
       {SequenceKind::vdc, SequenceKind::reflected, SequenceKind::sym}) {
    const PointSet exact = kind == SequenceKind::vdc ? vdc::vdc_prefix(2048)
                           : kind == SequenceKind::reflected
                               ? vdc::reflected_prefix(2048)
                               : vdc::sym_prefix(2048);
    const auto fast = vdc::q63::prefix(kind, 2048);
    for (std::size_t i = 0; i < fast.size(); ++i) {
      const auto& p = exact[i];
      const std::uint64_t expected =
          mpz_class(p.numerator() << (63 - p.exponent())).get_ui();
      CHECK(fast[i] == expected);
    }
  }
}

TEST_CASE("exact mode size guard") {
  CHECK_THROWS_AS(vdc::vdc_prefix((std::uint64_t{1} << 20) + 1), std::length_error);
}
