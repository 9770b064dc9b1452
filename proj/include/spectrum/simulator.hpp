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

#include <memory>
#include <string>
#include <vector>

#include "spectrum/agents.hpp"
#include "spectrum/economics.hpp"
#include "spectrum/ledger.hpp"
#include "spectrum/metrics.hpp"
#include "spectrum/privacy.hpp"
#include "spectrum/scenario.hpp"

namespace spectrum::sim {

using ledger::AgentId;
using ledger::Tick;

struct RunOptions {
  /// Replaces the pipeline brain of every pipeline agent (tests, adapters).
  std::shared_ptr<agents::Planner> brain;
  /// Fan perceive/plan out over worker threads before the serialized act phase.
  bool parallel_planning = false;
  ledger::LedgerOptions ledger_options;
};

struct TradeDetail {
  ledger::TradeRecord trade;
  Rational buyer_utility;
  Rational seller_utility;
  econ::SurplusBreakdown surplus;
};

/// One listing as the seller priced it, in order of creation.
struct ListingRecord {
  std::string auction_id;
  ledger::TokenId token_id;
  AgentId seller;
  Tick tick = 0;
  Cents reserve;
  Rational seller_value;  // u_s * capacity
};

struct Summary {
  std::string scenario;
  Mechanism mechanism = Mechanism::SecondPrice;
  std::uint64_t seed = 0;
  std::size_t trades = 0;
  Rational avg_price_per_mhz{0};  // total paid / total MHz traded
  Rational surplus{0};
  Rational shapley{0};
  Rational efficiency{0};
  double gini = 0.0;
  double hhi = 0.0;
  Rational buyer_profit{0};
  Rational seller_profit{0};
  Rational trade_value{0};
};

struct RunArtifacts {
  ScenarioConfig config;
  std::vector<AgentId> agent_ids;
  std::vector<ledger::Transaction> transactions;
  std::vector<TradeDetail> trades;
  std::vector<metrics::MetricsSnapshot> metrics;
  std::vector<ListingRecord> listings;
  std::vector<metrics::AuctionWelfare> sealed_auctions;
  std::vector<privacy::Snapshot> privacy_snapshots;
  privacy::Report privacy_report;
  Summary summary;
  /// Best need-bounded welfare against what the run realised.
  econ::PriceOfAnarchy market_poa;
  /// Per-auction welfare loss across finalized sealed-bid auctions.
  econ::PriceOfAnarchy auction_poa;
  std::vector<std::string> invariant_violations;
  std::vector<std::string> events;
  std::string final_world_state;
};

/// Runs the scenario for config.num_ticks trading ticks with the given seed
/// (overriding config.seed). Agent-level failures are logged, never fatal.
RunArtifacts run(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options = {});

}  // namespace spectrum::sim
