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

#include "spectrum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spectrum/error.hpp"

namespace spectrum::metrics {
namespace {

void require_balances(std::span<const double> balances) {
  for (double b : balances) {
    if (!(b >= 0.0)) throw MarketError(ErrorCode::InvalidInput, "balances must be non-negative");
  }
}

std::string fixed(double x, int places) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(places);
  os << x;
  return os.str();
}

}  // namespace

double hhi(std::span<const double> shares) {
  double sum = 0.0;
  double sq = 0.0;
  for (double s : shares) {
    if (!(s >= 0.0)) throw MarketError(ErrorCode::InvalidInput, "shares must be non-negative");
    sum += s;
    sq += s * s;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw MarketError(ErrorCode::InvalidInput, "shares must sum to 1");
  return sq;
}

double hhi_from_holdings(std::span<const std::int64_t> capacities) {
  const std::int64_t total = std::accumulate(capacities.begin(), capacities.end(), std::int64_t{0});
  if (total <= 0) return 0.0;
  // Exact in integers, one division at the end.
  long double sq = 0;
  for (std::int64_t c : capacities) {
    if (c < 0) throw MarketError(ErrorCode::InvalidInput, "negative holding");
    sq += static_cast<long double>(c) * static_cast<long double>(c);
  }
  return static_cast<double>(sq / (static_cast<long double>(total) * static_cast<long double>(total)));
}

double gini(std::span<const double> balances) {
  require_balances(balances);
  const std::size_t n = balances.size();
  const double sum = std::accumulate(balances.begin(), balances.end(), 0.0);
  if (n == 0 || sum == 0.0) return 0.0;
  double diff = 0.0;
  for (double a : balances) {
    for (double b : balances) diff += std::abs(a - b);
  }
  const double mean = sum / static_cast<double>(n);
  return diff / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mean);
}

double gini_sorted_rank(std::span<const double> balances) {
  require_balances(balances);
  const std::size_t n = balances.size();
  const double sum = std::accumulate(balances.begin(), balances.end(), 0.0);
  if (n == 0 || sum == 0.0) return 0.0;
  std::vector<double> sorted(balances.begin(), balances.end());
  std::sort(sorted.begin(), sorted.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += (2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0) * sorted[i];
  }
  return acc / (static_cast<double>(n) * sum);
}

const econ::SurplusBreakdown& SurplusAccumulator::record_trade(const ledger::Ledger& ledger,
                                                               std::uint64_t trade_id,
                                                               const Rational& buyer_utility,
                                                               const Rational& seller_utility) {
  const auto& trades = ledger.trades();
  const auto it = std::find_if(trades.begin(), trades.end(),
                               [&](const ledger::TradeRecord& t) { return t.trade_id == trade_id; });
  if (it == trades.end()) {
    throw MarketError(ErrorCode::InvalidInput, "unknown trade " + std::to_string(trade_id));
  }
  if (recorded_.count(trade_id)) {
    throw MarketError(ErrorCode::InvalidInput, "trade " + std::to_string(trade_id) + " already recorded");
  }
  last_ = econ::trade_surplus(buyer_utility, seller_utility, Rational(it->capacity_mhz),
                              to_dollars(it->price));
  recorded_.insert(trade_id);
  totals_.buyer_profit += last_.buyer_profit;
  totals_.seller_profit += last_.seller_profit;
  totals_.total += last_.total;
  return last_;
}

Rational coalition_value(std::span<const ShapleyPlayer> players, std::uint32_t members,
                         const Rational& total_capacity) {
  bool has_seller = false;
  Rational best(0);
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (!(members & (1u << i))) continue;
    has_seller = has_seller || players[i].seller;
    best = std::max(best, players[i].utility_per_mhz);
  }
  return has_seller ? total_capacity * best : Rational(0);
}

ShapleyResult shapley_benchmark(std::span<const ShapleyPlayer> players, const Rational& total_capacity) {
  const std::size_t n = players.size();
  const auto sellers = std::count_if(players.begin(), players.end(), [](const auto& p) { return p.seller; });
  if (sellers != 1) throw MarketError(ErrorCode::InvalidInput, "exactly one seller required");
  if (n > 10) throw MarketError(ErrorCode::InvalidInput, "at most 10 players for full enumeration");
  for (const auto& p : players) {
    if (p.utility_per_mhz < 0) throw MarketError(ErrorCode::InvalidInput, "negative utility");
  }

  // Integer marginal sums per player, divided once by n!.
  std::vector<Rational> sums(n, Rational(0));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::int64_t permutations = 0;
  do {
    std::uint32_t mask = 0;
    Rational before(0);
    for (std::size_t idx : order) {
      mask |= 1u << idx;
      const Rational after = coalition_value(players, mask, total_capacity);
      sums[idx] += after - before;
      before = after;
    }
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));

  ShapleyResult out;
  out.total = coalition_value(players, n == 0 ? 0u : (1u << n) - 1u, total_capacity);
  out.values.reserve(n);
  for (const auto& s : sums) out.values.push_back(s / permutations);
  return out;
}

Rational efficiency_ratio(const Rational& cumulative_surplus, const Rational& phi) {
  if (phi <= 0) throw MarketError(ErrorCode::InvalidInput, "shapley benchmark must be positive");
  return cumulative_surplus / phi;
}

Rational optimal_welfare(std::vector<BlockSupply> supply, std::vector<BlockDemand> demand) {
  // Cheapest sellers first, most eager buyers first.
  std::stable_sort(supply.begin(), supply.end(),
                   [](const auto& a, const auto& b) { return a.seller_utility < b.seller_utility; });
  std::stable_sort(demand.begin(), demand.end(),
                   [](const auto& a, const auto& b) { return a.utility_per_mhz > b.utility_per_mhz; });
  Rational welfare(0);
  std::size_t next = 0;
  for (const auto& d : demand) {
    std::int64_t gap = d.need_mhz;
    while (gap > 0 && next < supply.size()) {
      const auto& block = supply[next];
      if (d.utility_per_mhz <= block.seller_utility) break;
      welfare += (d.utility_per_mhz - block.seller_utility) * block.capacity_mhz;
      gap -= block.capacity_mhz;
      ++next;
    }
  }
  return welfare;
}

econ::PriceOfAnarchy auction_price_of_anarchy(std::span<const AuctionWelfare> auctions) {
  Rational best(0);
  Rational realised(0);
  for (const auto& a : auctions) {
    if (a.best_bidder_value > a.seller_value) best += a.best_bidder_value - a.seller_value;
    if (a.winner_value) realised += *a.winner_value - a.seller_value;
  }
  return econ::price_of_anarchy(best, std::max(Rational(0), realised));
}

MetricsSnapshot snapshot(Tick tick, const ledger::Ledger& ledger, const SurplusAccumulator& surplus,
                         const Rational& shapley_total, const std::map<AgentId, std::int64_t>& needs) {
  MetricsSnapshot out;
  out.tick = tick;
  out.cumulative_surplus = surplus.total();
  out.shapley_total = shapley_total;
  out.efficiency = shapley_total > 0 ? efficiency_ratio(surplus.total(), shapley_total) : Rational(0);

  std::vector<double> balances;
  std::vector<std::int64_t> capacities;
  for (const auto& id : ledger.agents()) {
    AgentSnapshot a{id, ledger.balance(id), ledger.held_capacity(id)};
    balances.push_back(to_double(to_dollars(a.balance)));
    capacities.push_back(a.capacity_mhz);
    const auto need = needs.find(id);
    if (need != needs.end()) out.residual_gap += std::max<std::int64_t>(0, need->second - a.capacity_mhz);
    out.agents.push_back(std::move(a));
  }
  out.hhi = hhi_from_holdings(capacities);
  out.gini = gini(balances);
  return out;
}

std::string csv_header(const std::vector<AgentId>& agents) {
  std::string out = "tick,hhi,gini,cumulative_surplus,efficiency,residual_gap";
  for (const auto& id : agents) out += ",balance_" + id + ",capacity_" + id;
  return out;
}

std::string csv_row(const MetricsSnapshot& s) {
  std::string out = std::to_string(s.tick) + "," + fixed(s.hhi, 6) + "," + fixed(s.gini, 6) + "," +
                    format_decimal(s.cumulative_surplus, 2) + "," + format_decimal(s.efficiency, 6) + "," +
                    std::to_string(s.residual_gap);
  for (const auto& a : s.agents) {
    out += "," + format_dollars(a.balance) + "," + std::to_string(a.capacity_mhz);
  }
  return out;
}

}  // namespace spectrum::metrics
