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

#include <cstddef>
#include <deque>

#include "spectrum/money.hpp"

// Valuation and mechanism-design math. Everything here is a pure function of
// its arguments; currency quantities are exact rationals in dollars and are
// only rounded to cents by callers that settle on the ledger.
namespace spectrum::econ {

struct ValuationParams {
  double alpha = 1.0;          // monetisation coefficient
  double tx_power_mw = 0.0;
  double channel_gain = 0.0;
  double noise_mw = 1.0;
  double interference_mw = 0.0;
};

/// alpha * S * log2(1 + P*h / (N0 + I)). Zero SINR gives zero value.
double shannon_valuation(const ValuationParams& params, double spectrum_mhz);

/// Willingness to pay for a whole block: utility per MHz times capacity.
Rational linear_valuation(const Rational& utility_per_mhz, const Rational& capacity_mhz);

/// Symmetric equilibrium shade under uniform private values: (N-1)/N * v.
Rational bne_shade_bid(const Rational& valuation, int num_bidders);

/// The most recent winning bids, capped at `window` entries.
class BidHistory {
 public:
  explicit BidHistory(std::size_t window = 20);

  void record(const Rational& winning_bid);

  std::size_t window() const { return window_; }
  bool empty() const { return bids_.empty(); }
  std::size_t size() const { return bids_.size(); }
  /// Oldest first.
  const std::deque<Rational>& winning_bids() const { return bids_; }

 private:
  std::size_t window_;
  std::deque<Rational> bids_;
};

/// Fraction of recorded winning bids strictly below `bid`. Throws EmptyHistory
/// on an empty history.
Rational empirical_win_cdf(const BidHistory& history, const Rational& bid);

struct BidChoice {
  Rational bid;
  Rational expected_surplus;  // (v - b) * F(b); zero on the fallback path
  bool used_history = false;
};

/// Maximises (v - b) * F(b) over the grid {0, step, 2*step, ...} restricted to
/// b < v, returning the lowest maximiser. With an empty history it falls back
/// to bne_shade_bid(v, fallback_bidders).
BidChoice optimize_first_price_bid(const Rational& valuation, const BidHistory& history,
                                   const Rational& grid_step, int fallback_bidders);

struct PricingPolicy {
  Rational markup{115, 100};  // > 1
  Rational decay{1, 10};      // in [0, 1)

  void validate() const;
};

/// r0 = markup * v_s.
Rational initial_reserve(const Rational& seller_valuation, const PricingPolicy& policy);

/// r_t = max(v_s, r_{t-1} * (1 - decay)).
Rational decay_reserve(const Rational& previous, const Rational& seller_valuation,
                       const PricingPolicy& policy);

struct SurplusBreakdown {
  Rational buyer_profit;
  Rational seller_profit;
  Rational total;
};

/// Per-trade surplus: buyer keeps max(0, u_b*c - p), seller keeps p - u_s*c.
SurplusBreakdown trade_surplus(const Rational& buyer_utility, const Rational& seller_utility,
                               const Rational& capacity_mhz, const Rational& price);

struct PriceOfAnarchy {
  bool market_failure = false;  // optimum positive, equilibrium zero
  Rational ratio{1};            // meaningful only when !market_failure
};

PriceOfAnarchy price_of_anarchy(const Rational& sw_opt, const Rational& sw_eq);

}  // namespace spectrum::econ
