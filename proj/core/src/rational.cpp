#include "necorr/rational.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

#include "necorr/error.hpp"

namespace necorr {

namespace {

constexpr std::uint64_t kMaxPart = 1'000'000'000;

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ConfigError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_digits(text.substr(0, slash), text);
    auto den = parse_digits(text.substr(slash + 1), text);
    if (num >= kMaxPart || den >= kMaxPart || den == 0)
      throw ConfigError("fraction out of range: '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  if (frac_part.size() > 9)
    throw ConfigError("too many decimal digits: '" + std::string(text) + "'");

  std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  std::uint64_t frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  if (whole >= kMaxPart / den)
    throw ConfigError("number out of range: '" + std::string(text) + "'");
  return Rational(whole * den + frac, den).reduced();
}

Rational Rational::reduced() const {
  if (num_ == 0) return Rational(0, 1);
  auto g = std::gcd(num_, den_);
  return Rational(num_ / g, den_ / g);
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace necorr
