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
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spectrum/auction_house.hpp"
#include "spectrum/economics.hpp"
#include "spectrum/ledger.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/money.hpp"

namespace spectrum::agents {

using ledger::AgentId;
using ledger::Tick;
using ledger::TokenId;

struct Holding {
  TokenId token_id;
  std::int64_t capacity_mhz = 0;
};

/// What an agent knows about itself at the start of a tick.
struct AgentState {
  AgentId agent_id;
  Cents balance;
  Rational utility_per_mhz;
  std::int64_t need_mhz = 0;
  std::vector<Holding> holdings;  // active (unexpired) tokens only

  std::int64_t held_capacity_mhz() const;
};

/// An outstanding sealed bid. The salt and value are the agent's own private
/// data and never leave it until the reveal.
struct PendingBid {
  std::string auction_id;
  TokenId token_id;
  std::int64_t capacity_mhz = 0;
  Cents value;
  std::string salt;
  bool revealed = false;
};

struct TradeSummary {
  std::size_t attempts = 0;  // resolved bids and buy-now attempts
  std::size_t wins = 0;
  Rational realized_profit_per_win{0};
};

/// Ledger-public market data plus the viewing agent's own private data.
struct MarketView {
  Tick tick = 0;
  Mechanism mechanism = Mechanism::SecondPrice;
  std::vector<auction::BoardEntry> open_auctions;
  econ::BidHistory recent_winning_bids{20};
  std::vector<PendingBid> own_pending_bids;
  TradeSummary trade_history;
  int num_buyers = 1;
  std::optional<std::size_t> max_concurrent_listings;
};

enum class MarketStructure { Homogeneous, Heterogeneous };
enum class DemandTrend { Stable, Fading };

std::string_view to_string(MarketStructure s);
std::string_view to_string(DemandTrend t);

struct Assessment {
  MarketStructure market_structure = MarketStructure::Heterogeneous;
  Rational win_rate{0};
  DemandTrend demand_trend = DemandTrend::Stable;
  std::string risk_note;
};

enum class IntentKind { Idle, Buy, Sell };

std::string_view to_string(IntentKind kind);

struct Intent {
  IntentKind kind = IntentKind::Idle;
  std::string auction_id;  // Buy
  Rational value{0};       // Buy: sealed bid, or the buy-now ceiling
  TokenId token_id;        // Sell
  Mechanism mechanism = Mechanism::SecondPrice;  // Sell
  Rational reserve{0};     // Sell
  std::string rationale;

  static Intent idle(std::string why = {});
};

enum class ActionKind { StartAuction, Relist, PlaceBid, Reveal, BuyNow };

std::string_view to_string(ActionKind kind);

/// A concrete contract call emitted by the executor stage.
struct Action {
  ActionKind kind = ActionKind::StartAuction;
  std::string auction_id;
  TokenId token_id;
  std::int64_t capacity_mhz = 0;
  Mechanism mechanism = Mechanism::SecondPrice;
  Cents amount;  // reserve, bid value, or buy-now ceiling
  std::string salt;
};

/// Internal memory shared by the pipeline stages of one agent.
struct AgentMemory {
  std::vector<PendingBid> pending;
  std::map<TokenId, Rational> last_reserve;  // most recent listing price, dollars
};

// --- shared arithmetic --------------------------------------------------

/// max(0, need - held).
std::int64_t demand_gap(const AgentState& state);
/// max(0, held - need).
std::int64_t surplus_capacity(const AgentState& state);

// --- heuristic baseline -------------------------------------------------

/// Rule-based trader: fixed markups when selling (1.15 / 1.10 / 1.05 by
/// mechanism), shaded-but-floored bids in first-price, truthful bids in
/// second-price, best-surplus buy-now in direct sale.
Intent heuristic_decide(const AgentState& state, const MarketView& view, Mechanism mechanism);

// --- cognitive pipeline -------------------------------------------------

Assessment perceive(const MarketView& view);

struct PlanningConfig {
  econ::PricingPolicy pricing;
  Rational grid_step_fraction{1, 100};  // of the bidder's valuation
};

struct PlanningContext {
  const Assessment& assessment;
  const AgentState& state;
  const MarketView& view;
  Mechanism mechanism;
  const PlanningConfig& config;
  const AgentMemory& memory;
};

/// The reasoning stage. Implementations may throw MarketError(BrainFailure).
class Planner {
 public:
  virtual ~Planner() = default;
  virtual Intent propose(const PlanningContext& context) = 0;
  virtual std::string name() const = 0;
};

/// Deterministic game-theoretic brain: empirical-CDF bidding in first-price,
/// truthful bids in second-price, buy-now within valuation, and price
/// skimming for listings.
class DefaultPlanner final : public Planner {
 public:
  Intent propose(const PlanningContext& context) override;
  std::string name() const override { return "default"; }
};

struct PlanResult {
  Intent intent;
  bool used_fallback = false;
  std::vector<std::string> notes;
};

/// Asks `brain` for an intent, validates it, and falls back to the default
/// brain on failure or malformed output. Bids are clamped to
/// [0, min(valuation, available balance)].
PlanResult plan(const PlanningContext& context, Planner& brain);

/// Cash not already promised to outstanding sealed bids.
Cents available_balance(const AgentState& state, const std::vector<PendingBid>& pending);

struct ActResult {
  std::vector<Action> actions;
  std::vector<std::string> rejections;
};

/// Executor stage: re-checks feasibility (ownership for sellers, budget for
/// bidders) and translates the intent into contract calls. Pending reveals
/// for auctions now in their reveal window are emitted first.
ActResult act(const Intent& intent, const AgentState& state, const MarketView& view,
              const AgentMemory& memory, std::mt19937_64& rng);

// --- agent object -------------------------------------------------------

enum class Strategy { Heuristic, Pipeline };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view text);

/// One trading participant: decision stage (heuristic or pipeline), the
/// executor, and the agent's private memory.
class TradingAgent {
 public:
  TradingAgent(AgentId id, std::string org, Strategy strategy, PlanningConfig config,
               std::shared_ptr<Planner> brain, std::uint64_t seed);

  const AgentId& id() const { return id_; }
  const std::string& org() const { return org_; }
  Strategy strategy() const { return strategy_; }
  const AgentMemory& memory() const { return memory_; }

  /// Drops memory about auctions that have ended and tokens no longer held.
  void sync(const MarketView& view, const AgentState& state);

  /// Perceive and plan. Pure with respect to the agent's memory.
  PlanResult decide(const AgentState& state, const MarketView& view) const;

  ActResult act(const Intent& intent, const AgentState& state, const MarketView& view);

  /// Executor feedback once the contract accepted or rejected an action.
  void record_result(const Action& action, bool accepted);

 private:
  AgentId id_;
  std::string org_;
  Strategy strategy_;
  PlanningConfig config_;
  std::shared_ptr<Planner> brain_;
  std::mt19937_64 rng_;
  AgentMemory memory_;
};

}  // namespace spectrum::agents
