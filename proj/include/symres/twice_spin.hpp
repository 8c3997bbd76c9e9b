#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace symres {

// Half-integer spin stored as the doubled value 2j, so that all spin
// arithmetic stays in exact integers.
struct TwiceSpin {
  int twice = 0;

  constexpr TwiceSpin() = default;
  constexpr explicit TwiceSpin(int t) : twice(t) {}

  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer_spin() const { return twice % 2 == 0; }

  friend constexpr auto operator<=>(TwiceSpin, TwiceSpin) = default;

  std::string to_string() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

// Smallest spin reachable by coupling n spin-1/2 particles: 0 or 1/2 by parity.
constexpr TwiceSpin min_total_spin(int n) { return TwiceSpin{n % 2}; }

// Parses "2", "0.5", "1.5" (decimal halves) into a TwiceSpin.
inline TwiceSpin parse_spin(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return TwiceSpin{2 * std::stoi(text)};
  }
  const std::string frac = text.substr(dot + 1);
  const int whole = dot == 0 ? 0 : std::stoi(text.substr(0, dot));
  if (frac == "0" || frac == "00") return TwiceSpin{2 * whole};
  if (frac == "5" || frac == "50") {
    if (whole < 0 || text[0] == '-') throw std::invalid_argument("spin must be non-negative: " + text);
    return TwiceSpin{2 * whole + 1};
  }
  throw std::invalid_argument("spin must be a multiple of 1/2: " + text);
}

}  // namespace symres
