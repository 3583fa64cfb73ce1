#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace itl {

/// Arbitrary-precision natural number (little-endian 32-bit limbs).
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v);

  static BigNat pow2(std::uint64_t e);

  BigNat operator+(const BigNat& o) const;
  BigNat operator*(const BigNat& o) const;

  bool operator==(const BigNat& o) const { return limbs_ == o.limbs_; }
  bool operator!=(const BigNat& o) const { return !(*this == o); }
  bool operator<(const BigNat& o) const;
  bool operator<=(const BigNat& o) const { return *this < o || *this == o; }

  bool is_zero() const { return limbs_.empty(); }
  /// Number of bits in the binary representation (0 for zero).
  std::uint64_t bit_length() const;
  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t as_u64() const;

  std::string to_decimal() const;
  /// log10 of the value, approximated; 0 for zero.
  double log10_approx() const;

 private:
  std::vector<std::uint32_t> limbs_;
  void trim();
};

/// An exact natural or a symbolic tower that exceeded the bit cap.
struct Bound {
  std::optional<BigNat> exact;
  /// Exact innermost recurrence levels computed before the cap triggered.
  std::vector<BigNat> tower_levels;
  /// Symbolic rendering, e.g. "E(4,4)" (empty when exact).
  std::string expr;
  /// Decimal digit-count estimate, when it fits a double.
  std::optional<double> digits10;

  bool is_exact() const { return exact.has_value(); }
  /// Decimal string, or "tower(<expr>; digits10~<est>)".
  std::string to_string() const;
  /// True when the bound is >= v (symbolic towers count as huge).
  bool at_least(std::uint64_t v) const;
};

inline constexpr std::uint64_t kDefaultBitCap = 1ull << 20;

/// E recurrence: E(n,0) = 0, E(n,k) = E(n,k-1) + n*2^E(n,k-1).
Bound e_number(std::uint64_t n, std::uint64_t k, std::uint64_t bit_cap = kDefaultBitCap);
/// Q recurrence: Q(n,0) = 0, Q(n,k) = 1 + E(n,k-1)*Q(n,k-1).
Bound q_number(std::uint64_t n, std::uint64_t k, std::uint64_t bit_cap = kDefaultBitCap);
/// B(s) = Q(2^{s+1},s+3) * (2*E(2^s,s+1) + s*Q(2^s,s+1)*E(2^{s+1},s+3)).
Bound fmp_bound(std::uint64_t s, std::uint64_t bit_cap = kDefaultBitCap);

}  // namespace itl
