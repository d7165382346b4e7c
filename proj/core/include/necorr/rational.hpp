#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace necorr {

/// Non-negative exact fraction. Used wherever a similarity is compared with
/// a threshold so that boundary cases such as 4/5 vs "0.8" are decided
/// without floating-point rounding.
class Rational {
 public:
  constexpr Rational() = default;
  /// `den` must be non-zero. The value is stored unreduced; comparisons are
  /// by cross multiplication.
  Rational(std::uint64_t num, std::uint64_t den);

  /// Accepts "3", "0.8", ".75", "4/5". At most 9 fractional digits and
  /// numerators/denominators below 10^9 so that cross products fit 64 bits.
  static Rational parse(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  Rational reduced() const;
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  /// "num/den" as stored.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }
  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace necorr
