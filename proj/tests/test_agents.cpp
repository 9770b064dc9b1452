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

#include <gtest/gtest.h>

#include <random>

#include "spectrum/agents.hpp"
#include "spectrum/digest.hpp"
#include "test_support.hpp"

using namespace spectrum;
using namespace spectrum::agents;
using auction::BoardEntry;
using auction::Phase;

namespace {

AgentState buyer(Rational u, std::int64_t need, Cents balance = dollars(5000)) {
  AgentState s;
  s.agent_id = "me";
  s.balance = balance;
  s.utility_per_mhz = u;
  s.need_mhz = need;
  return s;
}

AgentState seller(Rational u, std::int64_t tokens, std::int64_t need = 0) {
  AgentState s = buyer(u, need);
  for (std::int64_t i = 0; i < tokens; ++i) s.holdings.push_back({"t" + std::to_string(i), 10});
  return s;
}

BoardEntry entry(const std::string& id, Mechanism m, Cents reserve, Phase phase = Phase::Open,
                 const std::string& token = "x") {
  BoardEntry e;
  e.auction_id = id;
  e.token_id = token == "x" ? "tok-" + id : token;
  e.mechanism = m;
  e.seller = "seller";
  e.reserve = reserve;
  e.phase = phase;
  e.capacity_mhz = 10;
  return e;
}

MarketView view(Mechanism m, std::vector<BoardEntry> board = {}, int buyers = 3) {
  MarketView v;
  v.mechanism = m;
  v.open_auctions = std::move(board);
  v.num_buyers = buyers;
  return v;
}

struct Fixture {
  Assessment assessment;
  PlanningConfig config;
  AgentMemory memory;
};

PlanningContext context(Fixture& f, const AgentState& s, const MarketView& v) {
  return PlanningContext{f.assessment, s, v, v.mechanism, f.config, f.memory};
}

class ScriptedPlanner final : public Planner {
 public:
  explicit ScriptedPlanner(Intent intent, bool fail = false) : intent_(std::move(intent)), fail_(fail) {}
  Intent propose(const PlanningContext&) override {
    if (fail_) throw MarketError(ErrorCode::BrainFailure, "scripted timeout");
    return intent_;
  }
  std::string name() const override { return "scripted"; }

 private:
  Intent intent_;
  bool fail_;
};

}  // namespace

TEST(DemandGap, Formula) {
  AgentState s = seller(Rational(1), 4, 60);
  EXPECT_EQ(demand_gap(s), 20);
  EXPECT_EQ(surplus_capacity(s), 0);
  s = seller(Rational(1), 6, 40);
  EXPECT_EQ(demand_gap(s), 0);
  EXPECT_EQ(surplus_capacity(s), 20);
}

TEST(Heuristic, FirstPriceShadeAndFloor) {
  const auto v3 = view(Mechanism::FirstPrice, {entry("a1", Mechanism::FirstPrice, dollars(50))}, 3);
  const auto bid = heuristic_decide(buyer(Rational(20), 100), v3, Mechanism::FirstPrice);
  EXPECT_EQ(bid.kind, IntentKind::Buy);
  EXPECT_EQ(bid.value, Rational(400, 3));

  const auto v1 = view(Mechanism::FirstPrice, {entry("a1", Mechanism::FirstPrice, dollars(50))}, 1);
  EXPECT_EQ(heuristic_decide(buyer(Rational(20), 100), v1, Mechanism::FirstPrice).value, Rational(100));
}

TEST(Heuristic, SkipsAuctionsWithOwnOffer) {
  auto v = view(Mechanism::FirstPrice,
                {entry("a1", Mechanism::FirstPrice, Cents(0)), entry("a2", Mechanism::FirstPrice, Cents(0))});
  v.own_pending_bids.push_back({"a1", "tok-a1", 10, dollars(100), "salt", false});
  const auto in = heuristic_decide(buyer(Rational(20), 100), v, Mechanism::FirstPrice);
  EXPECT_EQ(in.auction_id, "a2");
}

TEST(Heuristic, SecondPriceIsTruthful) {
  const auto v = view(Mechanism::SecondPrice, {entry("a1", Mechanism::SecondPrice, dollars(50))});
  const auto in = heuristic_decide(buyer(Rational(15), 100), v, Mechanism::SecondPrice);
  EXPECT_EQ(in.value, Rational(150));
  EXPECT_EQ(in.value, econ::linear_valuation(Rational(15), Rational(10)));
}

TEST(Heuristic, DirectSalePicksLargestSurplusWithinBudget) {
  const auto v = view(Mechanism::DirectSale, {entry("a1", Mechanism::DirectSale, dollars(190)),
                                              entry("a2", Mechanism::DirectSale, dollars(120)),
                                              entry("a3", Mechanism::DirectSale, dollars(100))});
  EXPECT_EQ(heuristic_decide(buyer(Rational(20), 100), v, Mechanism::DirectSale).auction_id, "a3");
  EXPECT_EQ(heuristic_decide(buyer(Rational(20), 100, dollars(99)), v, Mechanism::DirectSale).kind, IntentKind::Idle);
  EXPECT_EQ(heuristic_decide(buyer(Rational(9), 100), v, Mechanism::DirectSale).kind, IntentKind::Idle);
}

TEST(Heuristic, SellerMarkupsByMechanism) {
  const AgentState s = seller(Rational(10), 2);
  EXPECT_EQ(heuristic_decide(s, view(Mechanism::DirectSale), Mechanism::DirectSale).reserve, Rational(115));
  EXPECT_EQ(heuristic_decide(s, view(Mechanism::FirstPrice), Mechanism::FirstPrice).reserve, Rational(110));
  EXPECT_EQ(heuristic_decide(s, view(Mechanism::SecondPrice), Mechanism::SecondPrice).reserve, Rational(105));
  // The listed token is skipped.
  const auto v = view(Mechanism::DirectSale, {entry("a1", Mechanism::DirectSale, dollars(1), Phase::Open, "t0")});
  EXPECT_EQ(heuristic_decide(s, v, Mechanism::DirectSale).token_id, "t1");
}

TEST(Heuristic, SellerWithoutSurplusIsIdle) {
  EXPECT_EQ(heuristic_decide(seller(Rational(10), 2, 20), view(Mechanism::DirectSale), Mechanism::DirectSale).kind,
            IntentKind::Idle);
}

// Bid bounds over random buyers: the first-price bid stays in [V/2, V) and
// only a seller with surplus capacity ever sells.
TEST(Heuristic, PropertyBounds) {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 500; ++round) {
    const Rational u(1 + static_cast<std::int64_t>(uniform_index(rng, 30)));
    const int n = 1 + static_cast<int>(uniform_index(rng, 6));
    const auto v = view(Mechanism::FirstPrice, {entry("a1", Mechanism::FirstPrice, Cents(0))}, n);
    const auto in = heuristic_decide(buyer(u, 100), v, Mechanism::FirstPrice);
    const Rational value = u * 10;
    ASSERT_EQ(in.kind, IntentKind::Buy);
    ASSERT_GE(in.value, value / 2);
    ASSERT_LT(in.value, value);

    const auto tokens = static_cast<std::int64_t>(uniform_index(rng, 5));
    const auto need = static_cast<std::int64_t>(10 * uniform_index(rng, 6));
    const AgentState s = seller(u, tokens, need);
    for (Mechanism m : {Mechanism::DirectSale, Mechanism::FirstPrice, Mechanism::SecondPrice}) {
      const auto d = heuristic_decide(s, view(m), m);
      if (s.held_capacity_mhz() <= s.need_mhz) {
        ASSERT_NE(d.kind, IntentKind::Sell);
      }
      Fixture f;
      const auto mv = view(m);
      const auto p = DefaultPlanner().propose(context(f, s, mv));
      if (s.held_capacity_mhz() <= s.need_mhz) {
        ASSERT_NE(p.kind, IntentKind::Sell);
      }
    }
  }
}

TEST(Perceive, Classification) {
  MarketView v;
  auto a = perceive(v);
  EXPECT_EQ(a.win_rate, Rational(0));
  EXPECT_EQ(a.demand_trend, DemandTrend::Stable);

  for (int i = 0; i < 3; ++i) v.recent_winning_bids.record(Rational(100));
  EXPECT_EQ(perceive(v).market_structure, MarketStructure::Homogeneous);

  MarketView fading;
  for (int x : {120, 120, 110, 110, 100, 100}) fading.recent_winning_bids.record(Rational(x));
  fading.trade_history = {4, 1, Rational(0)};
  a = perceive(fading);
  EXPECT_EQ(a.demand_trend, DemandTrend::Fading);
  EXPECT_EQ(a.market_structure, MarketStructure::Heterogeneous);
  EXPECT_EQ(a.win_rate, Rational(1, 4));
}

TEST(Plan, SecondPriceBidsValuation) {
  Fixture f;
  const AgentState s = buyer(Rational(15), 100);
  const auto v = view(Mechanism::SecondPrice, {entry("a1", Mechanism::SecondPrice, dollars(50))});
  DefaultPlanner brain;
  const auto r = plan(context(f, s, v), brain);
  EXPECT_EQ(r.intent.kind, IntentKind::Buy);
  EXPECT_EQ(r.intent.value, Rational(150));
  EXPECT_FALSE(r.used_fallback);
}

TEST(Plan, FirstPriceUsesEmpiricalOptimum) {
  Fixture f;
  const AgentState s = buyer(Rational(2), 100);  // V = 20
  auto v = view(Mechanism::FirstPrice, {entry("a1", Mechanism::FirstPrice, Cents(0))});
  for (int x : {10, 12, 14}) v.recent_winning_bids.record(Rational(x));
  f.config.grid_step_fraction = Rational(1, 40);  // 0.5 on V = 20
  DefaultPlanner brain;
  EXPECT_EQ(plan(context(f, s, v), brain).intent.value, Rational(29, 2));
}

TEST(Plan, RelistDecaysReserve) {
  Fixture f;
  const AgentState s = seller(Rational(10), 1);  // v_s = 100
  const auto v = view(Mechanism::DirectSale);
  DefaultPlanner brain;
  EXPECT_EQ(plan(context(f, s, v), brain).intent.reserve, Rational(115));
  f.memory.last_reserve["t0"] = Rational(115);
  EXPECT_EQ(plan(context(f, s, v), brain).intent.reserve, Rational(207, 2));
  f.memory.last_reserve["t0"] = Rational(207, 2);
  EXPECT_EQ(plan(context(f, s, v), brain).intent.reserve, Rational(100));
}

TEST(Plan, OversizedBrainBidIsClampedToBalance) {
  Fixture f;
  const AgentState s = buyer(Rational(20), 100, dollars(80));
  const auto v = view(Mechanism::SecondPrice, {entry("a1", Mechanism::SecondPrice, Cents(0))});
  Intent wild;
  wild.kind = IntentKind::Buy;
  wild.auction_id = "a1";
  wild.value = Rational(800);
  ScriptedPlanner brain(wild);
  const auto r = plan(context(f, s, v), brain);
  EXPECT_EQ(r.intent.value, Rational(80));
  EXPECT_FALSE(r.used_fallback);
}

TEST(Plan, FailingOrInvalidBrainFallsBack) {
  Fixture f;
  const AgentState s = buyer(Rational(15), 100);
  const auto v = view(Mechanism::SecondPrice, {entry("a1", Mechanism::SecondPrice, Cents(0))});
  ScriptedPlanner down(Intent{}, true);
  auto r = plan(context(f, s, v), down);
  EXPECT_TRUE(r.used_fallback);
  EXPECT_EQ(r.intent.value, Rational(150));
  EXPECT_FALSE(r.notes.empty());

  Intent bogus;
  bogus.kind = IntentKind::Sell;
  bogus.token_id = "not-mine";
  ScriptedPlanner wrong(bogus);
  r = plan(context(f, s, v), wrong);
  EXPECT_TRUE(r.used_fallback);
  EXPECT_EQ(r.intent.kind, IntentKind::Buy);
}

TEST(Act, SealedBuyCommitsThenRevealsLater) {
  std::mt19937_64 rng(1);
  AgentMemory memory;
  const AgentState s = buyer(Rational(15), 100);
  const auto v = view(Mechanism::SecondPrice, {entry("a1", Mechanism::SecondPrice, Cents(0))});
  Intent in;
  in.kind = IntentKind::Buy;
  in.auction_id = "a1";
  in.value = Rational(150);
  const auto r = act(in, s, v, memory, rng);
  ASSERT_EQ(r.actions.size(), 1u);
  EXPECT_EQ(r.actions[0].kind, ActionKind::PlaceBid);
  EXPECT_EQ(r.actions[0].amount, dollars(150));
  EXPECT_EQ(r.actions[0].salt.size(), 32u);

  memory.pending.push_back({"a1", "tok-a1", 10, dollars(150), r.actions[0].salt, false});
  const auto later = view(Mechanism::SecondPrice, {entry("a1", Mechanism::SecondPrice, Cents(0), Phase::Revealing)});
  const auto r2 = act(Intent::idle(), s, later, memory, rng);
  ASSERT_EQ(r2.actions.size(), 1u);
  EXPECT_EQ(r2.actions[0].kind, ActionKind::Reveal);
  EXPECT_EQ(r2.actions[0].salt, r.actions[0].salt);
}

TEST(Act, InfeasibleIntentsAreRejected) {
  std::mt19937_64 rng(1);
  AgentMemory memory;
  Intent sell;
  sell.kind = IntentKind::Sell;
  sell.token_id = "nope";
  auto r = act(sell, seller(Rational(5), 1), view(Mechanism::DirectSale), memory, rng);
  EXPECT_TRUE(r.actions.empty());
  EXPECT_EQ(r.rejections.size(), 1u);

  Intent bid;
  bid.kind = IntentKind::Buy;
  bid.auction_id = "a1";
  bid.value = Rational(500);
  const auto v = view(Mechanism::FirstPrice, {entry("a1", Mechanism::FirstPrice, Cents(0))});
  r = act(bid, buyer(Rational(100), 100, dollars(100)), v, memory, rng);
  EXPECT_TRUE(r.actions.empty());
  EXPECT_EQ(r.rejections.size(), 1u);
}

TEST(Act, ConcurrentListingLimit) {
  std::mt19937_64 rng(1);
  AgentMemory memory;
  AgentState s = seller(Rational(5), 3);
  auto v = view(Mechanism::DirectSale, {entry("a1", Mechanism::DirectSale, Cents(0), Phase::Open, "t0")});
  v.open_auctions[0].seller = "me";
  v.max_concurrent_listings = 1;
  Intent sell;
  sell.kind = IntentKind::Sell;
  sell.token_id = "t1";
  sell.reserve = Rational(10);
  EXPECT_TRUE(act(sell, s, v, memory, rng).actions.empty());
  v.max_concurrent_listings = 2;
  EXPECT_EQ(act(sell, s, v, memory, rng).actions.size(), 1u);
}

TEST(TradingAgentTest, MemoryTracksListingsAndBids) {
  TradingAgent agent("me", "OrgMe", Strategy::Pipeline, PlanningConfig{}, nullptr, 9);
  Action listed{ActionKind::StartAuction, "a1", "t0", 10, Mechanism::DirectSale, dollars(115), ""};
  agent.record_result(listed, true);
  EXPECT_EQ(agent.memory().last_reserve.at("t0"), Rational(115));
  Action bid{ActionKind::PlaceBid, "a2", "x", 10, Mechanism::FirstPrice, dollars(3), "salt"};
  agent.record_result(bid, false);
  EXPECT_TRUE(agent.memory().pending.empty());
  agent.record_result(bid, true);
  EXPECT_EQ(agent.memory().pending.size(), 1u);

  // Ended auctions and sold tokens drop out of memory.
  agent.sync(view(Mechanism::FirstPrice), buyer(Rational(1), 0));
  EXPECT_TRUE(agent.memory().pending.empty());
  EXPECT_TRUE(agent.memory().last_reserve.empty());
}

TEST(Plan, LoneFirstPriceBuyerMeetsTheReserve) {
  Fixture f;
  const AgentState s = buyer(Rational(12), 20);  // V = 120
  auto v = view(Mechanism::FirstPrice, {entry("a1", Mechanism::FirstPrice, Cents(5750))}, 1);
  DefaultPlanner brain;
  auto r = plan(context(f, s, v), brain);
  EXPECT_EQ(r.intent.kind, IntentKind::Buy);
  EXPECT_EQ(r.intent.value, Rational(115, 2));

  v.open_auctions[0].reserve = dollars(130);
  EXPECT_EQ(plan(context(f, s, v), brain).intent.kind, IntentKind::Idle);
}
