#pragma once

// Finite prefixes of the van der Corput sequence, its reflection 1 - phi(n),
// and the symmetrized interleaving z_{2m} = phi(m), z_{2m+1} = 1 - phi(m).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "vdc/dyadic.hpp"

namespace vdc {

enum class SequenceKind { vdc, reflected, sym, custom };

std::string_view to_string(SequenceKind kind);
std::optional<SequenceKind> parse_kind(std::string_view name);

// Exact mode keeps every point materialized; beyond this use the q63 fast
// path, whose points are still exact (63 fractional bits suffice).
inline constexpr std::uint64_t kMaxExactPoints = std::uint64_t{1} << 20;

// Ordered finite prefix of a sequence. Points live in [0,1]; duplicates are
// allowed (the symmetrized prefix contains e.g. 1/2 twice). Immutable after
// construction, safe to share across threads.
class PointSet {
 public:
  explicit PointSet(std::vector<DyadicRational> points,
                    SequenceKind kind = SequenceKind::custom);

  std::uint64_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const DyadicRational& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<DyadicRational>& points() const { return points_; }
  SequenceKind kind() const { return kind_; }

  // Permutation of 0..N-1 ordering the points non-decreasingly (stable).
  const std::vector<std::uint32_t>& sorted_view() const { return sorted_; }

  // Sum of all point values, exact.
  Rational point_sum() const;

  // Largest exponent among the points; 0 for the empty set. Every point is
  // a level-j grid point for j >= this.
  int max_exponent() const { return max_exp_; }

 private:
  std::vector<DyadicRational> points_;
  std::vector<std::uint32_t> sorted_;
  SequenceKind kind_;
  int max_exp_ = 0;
};

PointSet vdc_prefix(std::uint64_t n);
PointSet reflected_prefix(std::uint64_t n);
PointSet sym_prefix(std::uint64_t n);

// Fixed-point fast mode: a point is value/2^63. Generation is still exact
// (phi(n) for n < 2^63 fits in 63 fractional bits); only norms downstream
// become floating point.
namespace q63 {

inline constexpr std::uint64_t kOne = std::uint64_t{1} << 63;

std::uint64_t radical_inverse(std::uint64_t n);  // n < 2^63
std::vector<std::uint64_t> prefix(SequenceKind kind, std::uint64_t n);

}  // namespace q63

}  // namespace vdc
