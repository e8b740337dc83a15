#include "vdc/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace vdc {

namespace {

std::uint64_t reverse_bits64(std::uint64_t x) {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
  return (x >> 32) | (x << 32);
}

}  // namespace

std::uint64_t reverse_bits(std::uint64_t x, int width) {
  if (width < 0 || width > 64) throw std::invalid_argument("reverse_bits: bad width");
  if (width == 0) {
    if (x != 0) throw std::invalid_argument("reverse_bits: value wider than width");
    return 0;
  }
  if (width < 64 && (x >> width) != 0)
    throw std::invalid_argument("reverse_bits: value wider than width");
  return reverse_bits64(x) >> (64 - width);
}

int ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_log2: n must be positive");
  return static_cast<int>(std::bit_width(n - 1));
}

DyadicRational::DyadicRational(mpz_class numerator, int exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0) throw std::invalid_argument("DyadicRational: negative numerator");
  if (exp_ < 0) throw std::invalid_argument("DyadicRational: negative exponent");
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const auto tz = mpz_scan1(num_.get_mpz_t(), 0);
  const int shift =
      static_cast<int>(std::min(tz, static_cast<unsigned long>(exp_)));
  if (shift > 0) {
    num_ >>= shift;
    exp_ -= shift;
  }
}

Rational DyadicRational::to_rational() const {
  return Rational(num_, mpz_class(1) << exp_);
}

double DyadicRational::to_double() const {
  return std::ldexp(num_.get_d(), -exp_);
}

DyadicRational DyadicRational::reflected() const {
  mpz_class den = mpz_class(1) << exp_;
  if (num_ > den) throw std::domain_error("DyadicRational::reflected: value exceeds 1");
  return DyadicRational(den - num_, exp_);
}

std::string DyadicRational::str() const {
  const mpz_class den = mpz_class(1) << exp_;
  return num_.get_str() + "/" + den.get_str();
}

std::strong_ordering DyadicRational::operator<=>(const DyadicRational& o) const {
  // Compare a/2^i with b/2^j as a<<(e-i) vs b<<(e-j), e = max(i,j). The
  // common case (both numerators machine words, small exponents) avoids mpz
  // temporaries.
  const int e = std::max(exp_, o.exp_);
  if (e <= 62 && num_.fits_ulong_p() && o.num_.fits_ulong_p()) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(num_.get_ui())
                                  << (e - exp_);
    const unsigned __int128 rhs = static_cast<unsigned __int128>(o.num_.get_ui())
                                  << (e - o.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  mpz_class lhs = num_ << (e - exp_);
  mpz_class rhs = o.num_ << (e - o.exp_);
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

DyadicRational radical_inverse(std::uint64_t n) {
  if (n == 0) return DyadicRational();
  const int width = static_cast<int>(std::bit_width(n));
  // The reversed word is odd (its low bit is n's leading bit), so the
  // result is already canonical with exponent = bit length of n.
  return DyadicRational(mpz_class(reverse_bits(n, width)), width);
}

Rational nearest_int_distance(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  const Rational frac = x - Rational(fl);
  const Rational comp = Rational(1) - frac;
  return frac < comp ? frac : comp;
}

Rational abs_reflect_sum(std::uint64_t A) {
  const mpz_class a(A);
  if (A % 2 == 1) return Rational(a + 1, 2);
  const Rational last = abs(Rational(1) - Rational(2) * radical_inverse(A).to_rational());
  return Rational(a, 2) + last;
}

std::vector<std::uint64_t> points_in_dyadic_interval(int j, std::uint64_t m,
                                                     std::uint64_t n_points) {
  if (j < 0 || j > 62) throw std::invalid_argument("points_in_dyadic_interval: bad scale");
  if (m >= (std::uint64_t{1} << j))
    throw std::invalid_argument("points_in_dyadic_interval: position out of range");
  const std::uint64_t base = reverse_bits(m, j);  // = 2^j phi(m)
  const std::uint64_t step = std::uint64_t{1} << j;
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = base; n < n_points; n += step) out.push_back(n);
  return out;
}

}  // namespace vdc
