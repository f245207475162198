// Copyright 2026 The pbshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "pbshare/errors.hpp"

namespace pbshare {

/// Exact rational over arbitrary-precision integers. Always normalized
/// (lowest terms, positive denominator). Expression templates are off so
/// that `auto` captures values, not lazy expressions.
using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

inline Rational makeRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

/// "num/den", always with an explicit denominator.
inline std::string toString(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Decimal rendering rounded half away from zero to `places` digits.
inline std::string toDecimal(const Rational& r, int places = 6) {
  BigInt scale = 1;
  for (int k = 0; k < places; ++k) scale *= 10;
  BigInt num = numerator(r);
  const BigInt den = denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string fracText = frac.str();
  if (places > 0) {
    fracText.insert(0, static_cast<std::size_t>(places) - fracText.size(), '0');
  }
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += whole.str();
  if (places > 0) out += "." + fracText;
  return out;
}

/// Parses "123", "-4", "100000.50", "1e3"-free plain decimals exactly.
inline Rational parseDecimal(std::string_view text) {
  if (text.empty()) throw InputError("empty number");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  BigInt num = 0;
  BigInt den = 1;
  bool seenDot = false;
  bool seenDigit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.' && !seenDot) {
      seenDot = true;
    } else if (ch >= '0' && ch <= '9') {
      num = num * 10 + (ch - '0');
      if (seenDot) den *= 10;
      seenDigit = true;
    } else {
      throw InputError("malformed number '" + std::string(text) + "'");
    }
  }
  if (!seenDigit) throw InputError("malformed number '" + std::string(text) + "'");
  if (negative) num = -num;
  return Rational(num, den);
}

inline bool isIntegral(const Rational& r) { return denominator(r) == 1; }

}  // namespace pbshare
