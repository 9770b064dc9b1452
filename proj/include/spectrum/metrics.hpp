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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "spectrum/economics.hpp"
#include "spectrum/ledger.hpp"
#include "spectrum/money.hpp"

namespace spectrum::metrics {

using ledger::AgentId;
using ledger::Tick;

/// Herfindahl index: sum of squared shares. Shares must be >= 0 and sum to 1
/// within 1e-9.
double hhi(std::span<const double> shares);

/// HHI over raw holdings, normalised here. Zero total gives 0.
double hhi_from_holdings(std::span<const std::int64_t> capacities);

/// Pairwise form: sum_i sum_j |b_i - b_j| / (2 n^2 mean). All-zero gives 0.
double gini(std::span<const double> balances);

/// Rank form over ascending balances: sum_i (2i - n - 1) b_(i) / (n sum b).
double gini_sorted_rank(std::span<const double> balances);

/// Running welfare over settled trades.
class SurplusAccumulator {
 public:
  /// Looks the trade up on the ledger and adds buyer and seller profit.
  /// Throws InvalidInput for unknown or already-recorded trades.
  const econ::SurplusBreakdown& record_trade(const ledger::Ledger& ledger, std::uint64_t trade_id,
                                             const Rational& buyer_utility,
                                             const Rational& seller_utility);

  const Rational& total() const { return totals_.total; }
  const Rational& buyer_profit() const { return totals_.buyer_profit; }
  const Rational& seller_profit() const { return totals_.seller_profit; }
  std::size_t trades() const { return recorded_.size(); }

 private:
  econ::SurplusBreakdown totals_{Rational(0), Rational(0), Rational(0)};
  econ::SurplusBreakdown last_{Rational(0), Rational(0), Rational(0)};
  std::set<std::uint64_t> recorded_;
};

struct ShapleyPlayer {
  std::string id;
  Rational utility_per_mhz;
  bool seller = false;
};

struct ShapleyResult {
  Rational total;               // v(grand coalition)
  std::vector<Rational> values; // per player, same order as the input
};

/// v(S) = 0 without the seller, otherwise capacity * max u over S.
Rational coalition_value(std::span<const ShapleyPlayer> players, std::uint32_t members,
                         const Rational& total_capacity);

/// Average marginal contribution over every arrival order. Exactly one
/// seller and at most 10 players.
ShapleyResult shapley_benchmark(std::span<const ShapleyPlayer> players, const Rational& total_capacity);

/// eta = surplus / phi. Throws InvalidInput when phi is not positive.
Rational efficiency_ratio(const Rational& cumulative_surplus, const Rational& phi);

struct BlockSupply {
  std::int64_t capacity_mhz = 0;
  Rational seller_utility;
};

struct BlockDemand {
  Rational utility_per_mhz;
  std::int64_t need_mhz = 0;
};

/// Welfare of the best need-bounded allocation of whole blocks: highest-value
/// buyers first, each taking blocks until its need is covered, and only
/// trades with positive gain. Optimal when blocks share one size.
Rational optimal_welfare(std::vector<BlockSupply> supply, std::vector<BlockDemand> demand);

/// One finalized sealed-bid auction, valued at the block level.
struct AuctionWelfare {
  std::string auction_id;
  Rational seller_value;
  Rational best_bidder_value;
  std::optional<Rational> winner_value;
};

/// Sum of (best bidder value - seller value) over auctions where that gain
/// is positive, divided by the realised (winner value - seller value).
econ::PriceOfAnarchy auction_price_of_anarchy(std::span<const AuctionWelfare> auctions);

struct AgentSnapshot {
  AgentId agent_id;
  Cents balance;
  std::int64_t capacity_mhz = 0;
};

struct MetricsSnapshot {
  Tick tick = 0;
  double hhi = 0.0;
  double gini = 0.0;
  Rational cumulative_surplus{0};
  Rational shapley_total{0};
  Rational efficiency{0};
  std::int64_t residual_gap = 0;
  std::vector<AgentSnapshot> agents;
};

/// Assembles every metric from the ledger as it stands. `needs` gives the
/// current N_i(t) per agent; missing agents count as needing nothing.
MetricsSnapshot snapshot(Tick tick, const ledger::Ledger& ledger, const SurplusAccumulator& surplus,
                         const Rational& shapley_total, const std::map<AgentId, std::int64_t>& needs);

/// tick,hhi,gini,cumulative_surplus,efficiency,residual_gap, then
/// balance_<id>,capacity_<id> for each agent in ledger order.
std::string csv_header(const std::vector<AgentId>& agents);
std::string csv_row(const MetricsSnapshot& snap);

}  // namespace spectrum::metrics
