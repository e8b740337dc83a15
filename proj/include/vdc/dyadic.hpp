#pragma once

// Exact dyadic rationals a/2^k, the base-2 radical inverse, and the small
// number-theoretic helpers built on top of it.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "vdc/rational.hpp"

namespace vdc {

// Reverses the low `width` bits of x. Bits above `width` must be zero.
std::uint64_t reverse_bits(std::uint64_t x, int width);

// Smallest j >= 0 with 2^j >= n. Pure bit arithmetic; n >= 1.
int ceil_log2(std::uint64_t n);

// Nonnegative dyadic rational numerator/2^exponent in canonical form: the
// numerator is odd unless the value is an integer, so two values are equal
// iff their fields are equal.
class DyadicRational {
 public:
  DyadicRational() : num_(0), exp_(0) {}
  DyadicRational(mpz_class numerator, int exponent);

  static DyadicRational one() { return DyadicRational(mpz_class(1), 0); }

  const mpz_class& numerator() const { return num_; }
  int exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && exp_ == 0; }

  Rational to_rational() const;
  double to_double() const;

  // 1 - x; requires x <= 1.
  DyadicRational reflected() const;

  // x / 2^j.
  DyadicRational div_pow2(int j) const { return DyadicRational(num_, exp_ + j); }

  // "a/2^k" with the power written out, e.g. "3/8", "0/1", "1/1".
  std::string str() const;

  bool operator==(const DyadicRational&) const = default;
  std::strong_ordering operator<=>(const DyadicRational& o) const;

 private:
  mpz_class num_;
  int exp_;
};

// phi(n): the binary digits of n mirrored across the binary point. Lands in
// [0,1); the exponent never exceeds the bit length of n.
DyadicRational radical_inverse(std::uint64_t n);

// ||x||: distance from x to the nearest integer, in [0, 1/2].
Rational nearest_int_distance(const Rational& x);

// Sum_{s=0}^{A} |1 - 2 phi(s)|, via the closed forms (A+1)/2 for odd A and
// A/2 + |1 - 2 phi(A)| for even A. Always within [A/2, A/2 + 1].
Rational abs_reflect_sum(std::uint64_t A);

// All n < N with phi(n) in [m/2^j, (m+1)/2^j), enumerated arithmetically as
// n = 2^j phi(m) + 2^j s; the integer 2^j phi(m) is the j-bit reversal of m.
std::vector<std::uint64_t> points_in_dyadic_interval(int j, std::uint64_t m,
                                                     std::uint64_t n_points);

}  // namespace vdc
