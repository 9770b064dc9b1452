// Copyright 2026 The blast-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spectrum/money.hpp"

#include <cmath>
#include <cstdlib>

#include "spectrum/error.hpp"

namespace spectrum {

Rational to_dollars(Cents amount) { return Rational(amount.count(), 100); }

Cents floor_cents(const Rational& dollars) {
  const std::int64_t num = dollars.numerator() * 100;
  const std::int64_t den = dollars.denominator();  // always > 0
  std::int64_t q = num / den;
  if (num % den != 0 && num < 0) --q;
  return Cents(q);
}

Cents dollars(std::int64_t whole) { return Cents(whole * 100); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw MarketError(ErrorCode::InvalidInput, "non-finite number");
  }
  constexpr std::int64_t kScale = 1'000'000;
  return Rational(static_cast<std::int64_t>(std::llround(value * kScale)), kScale);
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) /
         static_cast<double>(value.denominator());
}

std::string format_decimal(const Rational& value, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = value < 0;
  const Rational magnitude = negative ? -value : value;
  // round half away from zero at the requested precision
  const Rational scaled = magnitude * scale + Rational(1, 2);
  const std::int64_t units = scaled.numerator() / scaled.denominator();
  std::string out = std::to_string(units / scale);
  if (places > 0) {
    std::string frac = std::to_string(units % scale);
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - frac.size(), '0');
    out += frac;
  }
  if (negative && units != 0) out.insert(out.begin(), '-');
  return out;
}

std::string format_dollars(Cents amount) {
  return format_decimal(to_dollars(amount), 2);
}

}  // namespace spectrum
