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

#include "spectrum/economics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spectrum/error.hpp"

namespace spectrum::econ {
namespace {

std::int64_t floor_div(const Rational& x) {
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
  return q;
}

}  // namespace

double shannon_valuation(const ValuationParams& p, double spectrum_mhz) {
  if (!(p.noise_mw > 0.0) || p.tx_power_mw < 0.0 || p.channel_gain < 0.0 ||
      p.interference_mw < 0.0 || spectrum_mhz < 0.0) {
    throw MarketError(ErrorCode::InvalidInput, "invalid valuation parameters");
  }
  const double sinr = p.tx_power_mw * p.channel_gain / (p.noise_mw + p.interference_mw);
  return p.alpha * spectrum_mhz * std::log2(1.0 + sinr);
}

Rational linear_valuation(const Rational& utility_per_mhz, const Rational& capacity_mhz) {
  if (utility_per_mhz < 0 || capacity_mhz < 0) {
    throw MarketError(ErrorCode::InvalidInput, "negative utility or capacity");
  }
  return utility_per_mhz * capacity_mhz;
}

Rational bne_shade_bid(const Rational& valuation, int num_bidders) {
  if (num_bidders < 1 || valuation < 0) {
    throw MarketError(ErrorCode::InvalidInput, "bne shade needs N >= 1 and v >= 0");
  }
  return Rational(num_bidders - 1, num_bidders) * valuation;
}

BidHistory::BidHistory(std::size_t window) : window_(window) {
  if (window_ == 0) throw MarketError(ErrorCode::InvalidInput, "bid history window must be positive");
}

void BidHistory::record(const Rational& winning_bid) {
  if (winning_bid < 0) throw MarketError(ErrorCode::InvalidInput, "negative winning bid");
  bids_.push_back(winning_bid);
  while (bids_.size() > window_) bids_.pop_front();
}

Rational empirical_win_cdf(const BidHistory& history, const Rational& bid) {
  if (history.empty()) throw MarketError(ErrorCode::EmptyHistory, "no winning bids recorded");
  const auto& bids = history.winning_bids();
  const auto below = std::count_if(bids.begin(), bids.end(), [&](const Rational& w) { return w < bid; });
  return Rational(static_cast<std::int64_t>(below), static_cast<std::int64_t>(bids.size()));
}

BidChoice optimize_first_price_bid(const Rational& valuation, const BidHistory& history,
                                   const Rational& grid_step, int fallback_bidders) {
  if (grid_step <= 0) throw MarketError(ErrorCode::InvalidInput, "grid step must be positive");
  if (valuation < 0) throw MarketError(ErrorCode::InvalidInput, "negative valuation");
  if (history.empty()) {
    return BidChoice{bne_shade_bid(valuation, fallback_bidders), Rational(0), false};
  }

  // F is a right-continuous step function that only jumps just above recorded
  // bids, and (v - b) falls as b rises, so within each flat piece the lowest
  // grid point dominates. Candidates are therefore 0 and, for every recorded
  // bid w, the first grid point strictly above w.
  std::vector<Rational> candidates{Rational(0)};
  for (const Rational& w : history.winning_bids()) {
    candidates.push_back(grid_step * (floor_div(w / grid_step) + 1));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  BidChoice best{Rational(0), Rational(0), true};
  bool have_best = false;
  for (const Rational& b : candidates) {
    if (b >= valuation) break;
    const Rational surplus = (valuation - b) * empirical_win_cdf(history, b);
    if (!have_best || surplus > best.expected_surplus) {
      best.bid = b;
      best.expected_surplus = surplus;
      have_best = true;
    }
  }
  return best;
}

void PricingPolicy::validate() const {
  if (markup <= 1) throw MarketError(ErrorCode::InvalidInput, "markup must exceed 1");
  if (decay < 0 || decay >= 1) throw MarketError(ErrorCode::InvalidInput, "decay must lie in [0, 1)");
}

Rational initial_reserve(const Rational& seller_valuation, const PricingPolicy& policy) {
  policy.validate();
  if (seller_valuation < 0) throw MarketError(ErrorCode::InvalidInput, "negative seller valuation");
  return policy.markup * seller_valuation;
}

Rational decay_reserve(const Rational& previous, const Rational& seller_valuation,
                       const PricingPolicy& policy) {
  policy.validate();
  if (seller_valuation < 0 || previous < seller_valuation) {
    throw MarketError(ErrorCode::InvalidInput, "reserve must start at or above v_s >= 0");
  }
  return std::max(seller_valuation, previous * (Rational(1) - policy.decay));
}

SurplusBreakdown trade_surplus(const Rational& buyer_utility, const Rational& seller_utility,
                               const Rational& capacity_mhz, const Rational& price) {
  if (capacity_mhz <= 0) throw MarketError(ErrorCode::InvalidInput, "capacity must be positive");
  SurplusBreakdown out;
  out.buyer_profit = std::max(Rational(0), buyer_utility * capacity_mhz - price);
  out.seller_profit = price - seller_utility * capacity_mhz;
  out.total = out.buyer_profit + out.seller_profit;
  return out;
}

PriceOfAnarchy price_of_anarchy(const Rational& sw_opt, const Rational& sw_eq) {
  if (sw_eq < 0 || sw_opt < 0) throw MarketError(ErrorCode::InvalidInput, "negative welfare");
  if (sw_eq > sw_opt) {
    throw MarketError(ErrorCode::InvalidInput, "equilibrium welfare exceeds the optimum");
  }
  if (sw_eq.numerator() == 0) {
    if (sw_opt.numerator() == 0) return PriceOfAnarchy{false, Rational(1)};
    return PriceOfAnarchy{true, Rational(0)};
  }
  return PriceOfAnarchy{false, sw_opt / sw_eq};
}

}  // namespace spectrum::econ
