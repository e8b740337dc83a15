#include "vdc/sequences.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vdc {

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::vdc: return "vdc";
    case SequenceKind::reflected: return "reflected";
    case SequenceKind::sym: return "sym";
    case SequenceKind::custom: return "custom";
  }
  return "?";
}

std::optional<SequenceKind> parse_kind(std::string_view name) {
  if (name == "vdc") return SequenceKind::vdc;
  if (name == "reflected") return SequenceKind::reflected;
  if (name == "sym") return SequenceKind::sym;
  if (name == "custom") return SequenceKind::custom;
  return std::nullopt;
}

PointSet::PointSet(std::vector<DyadicRational> points, SequenceKind kind)
    : points_(std::move(points)), kind_(kind) {
  if (points_.size() > kMaxExactPoints)
    throw std::length_error("PointSet: exact mode is limited to 2^20 points");
  for (const auto& p : points_) {
    if (p.numerator() > (mpz_class(1) << p.exponent()))
      throw std::invalid_argument("PointSet: point outside [0,1]");
    max_exp_ = std::max(max_exp_, p.exponent());
  }
  sorted_.resize(points_.size());
  std::iota(sorted_.begin(), sorted_.end(), 0u);
  std::stable_sort(sorted_.begin(), sorted_.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return points_[a] < points_[b];
                   });
}

Rational PointSet::point_sum() const {
  Rational s;
  for (const auto& p : points_) s += p.to_rational();
  return s;
}

namespace {

void check_exact_size(std::uint64_t n) {
  if (n > kMaxExactPoints)
    throw std::length_error("prefix: exact mode is limited to 2^20 points");
}

}  // namespace

PointSet vdc_prefix(std::uint64_t n) {
  check_exact_size(n);
  std::vector<DyadicRational> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) pts.push_back(radical_inverse(i));
  return PointSet(std::move(pts), SequenceKind::vdc);
}

PointSet reflected_prefix(std::uint64_t n) {
  check_exact_size(n);
  std::vector<DyadicRational> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    pts.push_back(radical_inverse(i).reflected());
  return PointSet(std::move(pts), SequenceKind::reflected);
}

PointSet sym_prefix(std::uint64_t n) {
  check_exact_size(n);
  std::vector<DyadicRational> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const DyadicRational phi = radical_inverse(i / 2);
    pts.push_back(i % 2 == 0 ? phi : phi.reflected());
  }
  return PointSet(std::move(pts), SequenceKind::sym);
}

namespace q63 {

std::uint64_t radical_inverse(std::uint64_t n) {
  if (n >= kOne) throw std::invalid_argument("q63::radical_inverse: n >= 2^63");
  return reverse_bits(n, 63);
}

std::vector<std::uint64_t> prefix(SequenceKind kind, std::uint64_t n) {
  if (kind == SequenceKind::custom)
    throw std::invalid_argument("q63::prefix: no generator for custom kind");
  std::vector<std::uint64_t> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (kind) {
      case SequenceKind::vdc:
        pts.push_back(radical_inverse(i));
        break;
      case SequenceKind::reflected:
        pts.push_back(kOne - radical_inverse(i));
        break;
      default:  // sym
        pts.push_back(i % 2 == 0 ? radical_inverse(i / 2)
                                 : kOne - radical_inverse(i / 2));
        break;
    }
  }
  return pts;
}

}  // namespace q63

}  // namespace vdc
