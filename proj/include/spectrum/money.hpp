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

#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace spectrum {

/// Exact arithmetic for valuations, bids and reserves (in dollars).
// Compare against Rational(0) or numerator(), never a bare integer with == or
// !=: Boost 1.74's mixed equality recurses forever under C++20 rewriting.
using Rational = boost::rational<std::int64_t>;

/// Settled currency in integer minor units. Balances and prices on the
/// ledger are always Cents so conservation holds exactly.
class Cents {
 public:
  constexpr Cents() = default;
  constexpr explicit Cents(std::int64_t count) : count_(count) {}

  constexpr std::int64_t count() const { return count_; }

  friend constexpr auto operator<=>(Cents, Cents) = default;

  constexpr Cents& operator+=(Cents other) {
    count_ += other.count_;
    return *this;
  }
  constexpr Cents& operator-=(Cents other) {
    count_ -= other.count_;
    return *this;
  }
  friend constexpr Cents operator+(Cents a, Cents b) { return a += b; }
  friend constexpr Cents operator-(Cents a, Cents b) { return a -= b; }

 private:
  std::int64_t count_ = 0;
};

Rational to_dollars(Cents amount);

/// Rounds toward negative infinity to the nearest cent.
Cents floor_cents(const Rational& dollars);

/// Whole dollars, e.g. dollars(5000) == Cents(500000).
Cents dollars(std::int64_t whole);

/// Converts a configuration double to a rational with 1e-6 resolution.
Rational rational_from_double(double value);

double to_double(const Rational& value);

/// Fixed-point decimal rendering, rounded half away from zero.
std::string format_decimal(const Rational& value, int places);

/// "133.33" style rendering of a cent amount.
std::string format_dollars(Cents amount);

}  // namespace spectrum
