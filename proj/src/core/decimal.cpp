// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/core/decimal.hpp"

#include <algorithm>

#include "conductor/core/errors.hpp"

namespace conductor {
namespace {

Int128 pow10(int n) {
  Int128 r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

// Divide by 10^digits, rounding half to even.
Int128 div_round_half_even(Int128 value, int digits) {
  if (digits <= 0) return value;
  const Int128 d = pow10(digits);
  const bool negative = value < 0;
  Int128 mag = negative ? -value : value;
  Int128 q = mag / d;
  const Int128 r = mag % d;
  const Int128 twice = r * 2;
  if (twice > d || (twice == d && (q % 2) != 0)) ++q;
  return negative ? -q : q;
}

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  std::string out;
  const bool negative = v < 0;
  if (negative) v = -v;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Usd Usd::parse(std::string_view text) {
  auto fail = [&] { throw Error(ErrorKind::InvalidArgument, "malformed decimal '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  Int128 whole = 0;
  std::size_t int_digits = 0;
  for (; i < text.size() && text[i] != '.'; ++i) {
    if (text[i] < '0' || text[i] > '9') fail();
    whole = whole * 10 + (text[i] - '0');
    ++int_digits;
  }
  Int128 frac = 0;
  int frac_digits = 0;
  if (i < text.size()) {
    ++i;  // '.'
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') fail();
      if (frac_digits == kScaleDigits) fail();
      frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
    }
  }
  if (int_digits == 0 && frac_digits == 0) fail();
  Int128 femto = whole * pow10(kScaleDigits) + frac * pow10(kScaleDigits - frac_digits);
  return Usd(negative ? -femto : femto);
}

Usd Usd::rounded(int places) const {
  places = std::clamp(places, 0, kScaleDigits);
  const int drop = kScaleDigits - places;
  return Usd(div_round_half_even(femto_, drop) * pow10(drop));
}

std::string Usd::to_string(int places) const {
  places = std::clamp(places, 0, kScaleDigits);
  const Int128 scaled = div_round_half_even(femto_, kScaleDigits - places);
  const bool negative = scaled < 0;
  std::string digits = int128_to_string(negative ? -scaled : scaled);
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

double Usd::to_double() const {
  return static_cast<double>(femto_) / static_cast<double>(pow10(kScaleDigits));
}

}  // namespace conductor
