// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace conductor {

__extension__ typedef __int128 Int128;

/// Exact US-dollar amount with 15 fractional digits (femto-dollars).
///
/// Prices are quoted per 1000 tokens with at most 12 fractional digits, so
/// `tokens * rate` is always representable without rounding. Rounding only
/// happens when a caller asks for it (`rounded`, `to_string`).
class Usd {
 public:
  static constexpr int kScaleDigits = 15;

  constexpr Usd() = default;

  static Usd from_femto(Int128 femto) { return Usd(femto); }
  /// Parses "0.002", "12", "-1.5". Throws InvalidArgument on malformed input
  /// or more than 15 fractional digits.
  static Usd parse(std::string_view text);

  Int128 femto() const { return femto_; }

  /// Round half-to-even to `places` fractional digits (0..15).
  Usd rounded(int places) const;
  /// Fixed-point rendering with exactly `places` digits after the point,
  /// rounding half-to-even.
  std::string to_string(int places = 6) const;
  double to_double() const;

  Usd& operator+=(const Usd& other) {
    femto_ += other.femto_;
    return *this;
  }
  friend Usd operator+(Usd a, const Usd& b) { return a += b; }
  friend bool operator==(const Usd&, const Usd&) = default;
  friend auto operator<=>(const Usd& a, const Usd& b) { return a.femto_ <=> b.femto_; }

 private:
  explicit constexpr Usd(Int128 femto) : femto_(femto) {}
  Int128 femto_ = 0;
};

}  // namespace conductor
