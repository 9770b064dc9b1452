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

#include "spectrum/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectrum/digest.hpp"
#include "spectrum/error.hpp"

namespace spectrum::agents {
namespace {

using auction::BoardEntry;
using auction::Phase;

Rational block_value(const Rational& utility, std::int64_t capacity) {
  return econ::linear_valuation(utility, Rational(capacity));
}

const BoardEntry* find_entry(const MarketView& view, const std::string& auction_id) {
  for (const auto& e : view.open_auctions) {
    if (e.auction_id == auction_id) return &e;
  }
  return nullptr;
}

bool on_board(const MarketView& view, const TokenId& token) {
  return std::any_of(view.open_auctions.begin(), view.open_auctions.end(),
                     [&](const BoardEntry& e) { return e.token_id == token; });
}

bool has_pending(const std::vector<PendingBid>& pending, const std::string& auction_id) {
  return std::any_of(pending.begin(), pending.end(),
                     [&](const PendingBid& p) { return p.auction_id == auction_id; });
}

const Holding* find_holding(const AgentState& state, const TokenId& token) {
  for (const auto& h : state.holdings) {
    if (h.token_id == token) return &h;
  }
  return nullptr;
}

std::int64_t listed_capacity(const AgentState& state, const MarketView& view) {
  std::int64_t total = 0;
  for (const auto& h : state.holdings) {
    if (on_board(view, h.token_id)) total += h.capacity_mhz;
  }
  return total;
}

// Capacity still worth offering once tokens already on the board are counted
// as gone.
bool has_sellable_surplus(const AgentState& state, const MarketView& view) {
  return state.held_capacity_mhz() - listed_capacity(state, view) > state.need_mhz;
}

// Gap not yet covered by outstanding sealed bids.
std::int64_t uncovered_gap(const AgentState& state, const std::vector<PendingBid>& pending) {
  std::int64_t gap = demand_gap(state);
  for (const auto& p : pending) gap -= p.capacity_mhz;
  return std::max<std::int64_t>(0, gap);
}

const Holding* first_idle_token(const AgentState& state, const MarketView& view) {
  for (const auto& h : state.holdings) {
    if (!on_board(view, h.token_id)) return &h;
  }
  return nullptr;
}

// Auctions this agent could enter right now.
std::vector<const BoardEntry*> biddable(const AgentState& state, const MarketView& view,
                                        Mechanism mechanism) {
  std::vector<const BoardEntry*> out;
  for (const auto& e : view.open_auctions) {
    if (e.phase != Phase::Open || e.mechanism != mechanism) continue;
    if (e.seller == state.agent_id) continue;
    if (has_pending(view.own_pending_bids, e.auction_id)) continue;
    out.push_back(&e);
  }
  return out;
}

// Listing with the largest non-negative surplus V - ask that the agent can pay for.
const BoardEntry* best_buy_now(const AgentState& state, const MarketView& view, Cents budget) {
  const BoardEntry* best = nullptr;
  Rational best_surplus(-1);
  for (const BoardEntry* e : biddable(state, view, Mechanism::DirectSale)) {
    const Rational v = block_value(state.utility_per_mhz, e->capacity_mhz);
    const Rational ask = to_dollars(e->reserve);
    if (ask > v || e->reserve > budget) continue;
    if (v - ask > best_surplus) {
      best_surplus = v - ask;
      best = e;
    }
  }
  return best;
}

Rational min_r(const Rational& a, const Rational& b) { return a < b ? a : b; }

Intent buy_intent(const BoardEntry& e, const Rational& value, std::string why) {
  Intent out;
  out.kind = IntentKind::Buy;
  out.auction_id = e.auction_id;
  out.value = value;
  out.rationale = std::move(why);
  return out;
}

Intent sell_intent(const Holding& h, Mechanism mechanism, const Rational& reserve, std::string why) {
  Intent out;
  out.kind = IntentKind::Sell;
  out.token_id = h.token_id;
  out.mechanism = mechanism;
  out.reserve = reserve;
  out.rationale = std::move(why);
  return out;
}

std::size_t active_listings(const AgentState& state, const MarketView& view) {
  return static_cast<std::size_t>(
      std::count_if(view.open_auctions.begin(), view.open_auctions.end(),
                    [&](const BoardEntry& e) { return e.seller == state.agent_id; }));
}

// Smallest cent amount not below x.
Cents ceil_cents(const Rational& x) {
  Cents c = floor_cents(x);
  if (to_dollars(c) < x) c += Cents(1);
  return c;
}

}  // namespace

std::int64_t AgentState::held_capacity_mhz() const {
  return std::accumulate(holdings.begin(), holdings.end(), std::int64_t{0},
                         [](std::int64_t acc, const Holding& h) { return acc + h.capacity_mhz; });
}

std::string_view to_string(MarketStructure s) {
  return s == MarketStructure::Homogeneous ? "homogeneous" : "heterogeneous";
}

std::string_view to_string(DemandTrend t) { return t == DemandTrend::Fading ? "fading" : "stable"; }

std::string_view to_string(IntentKind kind) {
  switch (kind) {
    case IntentKind::Idle: return "idle";
    case IntentKind::Buy: return "buy";
    case IntentKind::Sell: return "sell";
  }
  return "idle";
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::StartAuction: return "start_auction";
    case ActionKind::Relist: return "relist";
    case ActionKind::PlaceBid: return "place_bid";
    case ActionKind::Reveal: return "reveal";
    case ActionKind::BuyNow: return "buy_now";
  }
  return "unknown";
}

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::Heuristic ? "heuristic" : "pipeline";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "heuristic") return Strategy::Heuristic;
  if (text == "pipeline") return Strategy::Pipeline;
  return std::nullopt;
}

Intent Intent::idle(std::string why) {
  Intent out;
  out.rationale = std::move(why);
  return out;
}

std::int64_t demand_gap(const AgentState& state) {
  return std::max<std::int64_t>(0, state.need_mhz - state.held_capacity_mhz());
}

std::int64_t surplus_capacity(const AgentState& state) {
  return std::max<std::int64_t>(0, state.held_capacity_mhz() - state.need_mhz);
}

Cents available_balance(const AgentState& state, const std::vector<PendingBid>& pending) {
  Cents out = state.balance;
  for (const auto& p : pending) out -= p.value;
  return std::max(Cents(0), out);
}

// --- heuristic ------------------------------------------------------------

Intent heuristic_decide(const AgentState& state, const MarketView& view, Mechanism mechanism) {
  if (has_sellable_surplus(state, view)) {
    const Holding* idle = first_idle_token(state, view);
    if (idle == nullptr) return Intent::idle("all surplus tokens listed");
    const Rational v = block_value(state.utility_per_mhz, idle->capacity_mhz);
    Rational markup;
    switch (mechanism) {
      case Mechanism::DirectSale: markup = Rational(115, 100); break;
      case Mechanism::FirstPrice: markup = Rational(110, 100); break;
      case Mechanism::SecondPrice: markup = Rational(105, 100); break;
    }
    return sell_intent(*idle, mechanism, markup * v, "fixed markup over own valuation");
  }

  if (uncovered_gap(state, view.own_pending_bids) <= 0) return Intent::idle("no demand gap");
  const Cents budget = available_balance(state, view.own_pending_bids);

  if (mechanism == Mechanism::DirectSale) {
    const BoardEntry* best = best_buy_now(state, view, budget);
    if (best == nullptr) return Intent::idle("no affordable listing at or below valuation");
    return buy_intent(*best, block_value(state.utility_per_mhz, best->capacity_mhz),
                      "largest buy-now surplus");
  }

  const int n = std::max(1, view.num_buyers);
  for (const BoardEntry* e : biddable(state, view, mechanism)) {
    const Rational v = block_value(state.utility_per_mhz, e->capacity_mhz);
    Rational bid;
    if (mechanism == Mechanism::FirstPrice) {
      bid = std::max(econ::bne_shade_bid(v, n), v / 2);
    } else {
      bid = v;
    }
    bid = min_r(bid, to_dollars(budget));
    if (bid <= 0 || to_dollars(e->reserve) > bid) continue;
    return buy_intent(*e, bid, mechanism == Mechanism::FirstPrice ? "shaded bid" : "truthful bid");
  }
  return Intent::idle("no auction clears at an acceptable bid");
}

// --- perception -----------------------------------------------------------

Assessment perceive(const MarketView& view) {
  Assessment out;
  const auto& th = view.trade_history;
  if (th.attempts > 0) {
    out.win_rate = Rational(static_cast<std::int64_t>(std::min(th.wins, th.attempts)),
                            static_cast<std::int64_t>(th.attempts));
  }

  const auto& bids = view.recent_winning_bids.winning_bids();
  std::vector<double> xs;
  xs.reserve(bids.size());
  for (const auto& b : bids) xs.push_back(to_double(b));

  if (xs.size() >= 2) {
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    const double sd = std::sqrt(var);
    const bool flat = mean == 0.0 ? sd == 0.0 : sd / mean < 0.05;
    out.market_structure = flat ? MarketStructure::Homogeneous : MarketStructure::Heterogeneous;
  }

  // Three equal consecutive windows over the most recent bids.
  const std::size_t w = xs.size() / 3;
  if (w > 0) {
    const std::size_t start = xs.size() - 3 * w;
    double means[3];
    for (std::size_t k = 0; k < 3; ++k) {
      const auto first = xs.begin() + static_cast<std::ptrdiff_t>(start + k * w);
      means[k] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(w), 0.0) /
                 static_cast<double>(w);
    }
    if (means[0] > means[1] && means[1] > means[2]) out.demand_trend = DemandTrend::Fading;
  }

  if (out.demand_trend == DemandTrend::Fading) {
    out.risk_note = "winning bids falling; overpaying risk rising";
  } else if (th.attempts >= 5 && out.win_rate < Rational(1, 5)) {
    out.risk_note = "low win rate; bids may be too shaded";
  } else {
    out.risk_note = "none";
  }
  return out;
}

// --- planning -------------------------------------------------------------

Intent DefaultPlanner::propose(const PlanningContext& ctx) {
  const AgentState& state = ctx.state;
  const MarketView& view = ctx.view;

  if (has_sellable_surplus(state, view)) {
    const Holding* idle = first_idle_token(state, view);
    if (idle == nullptr) return Intent::idle("all surplus tokens listed");
    const Rational vs = block_value(state.utility_per_mhz, idle->capacity_mhz);
    const auto prev = ctx.memory.last_reserve.find(idle->token_id);
    Rational r;
    std::string why;
    if (prev == ctx.memory.last_reserve.end()) {
      r = econ::initial_reserve(vs, ctx.config.pricing);
      why = "opening price at markup";
    } else {
      r = econ::decay_reserve(std::max(prev->second, vs), vs, ctx.config.pricing);
      why = "unsold; decayed reserve";
    }
    // Settle on whole cents without dropping below the seller's own value.
    r = to_dollars(std::max(floor_cents(r), ceil_cents(vs)));
    return sell_intent(*idle, ctx.mechanism, r, why);
  }

  if (uncovered_gap(state, view.own_pending_bids) <= 0) return Intent::idle("no demand gap");
  const Cents budget = available_balance(state, view.own_pending_bids);

  if (ctx.mechanism == Mechanism::DirectSale) {
    const BoardEntry* best = best_buy_now(state, view, budget);
    if (best == nullptr) return Intent::idle("no listing within valuation");
    return buy_intent(*best, block_value(state.utility_per_mhz, best->capacity_mhz),
                      "buy-now at or below valuation");
  }

  const int n = std::max(1, view.num_buyers);
  for (const BoardEntry* e : biddable(state, view, ctx.mechanism)) {
    const Rational v = block_value(state.utility_per_mhz, e->capacity_mhz);
    Rational bid;
    std::string why;
    if (ctx.mechanism == Mechanism::FirstPrice) {
      const auto choice = econ::optimize_first_price_bid(v, view.recent_winning_bids,
                                                         ctx.config.grid_step_fraction * v, n);
      bid = choice.bid;
      why = choice.used_history ? "empirical win-probability optimum" : "equilibrium shade";
      // A bid under the reserve never wins; meeting the reserve still leaves surplus.
      const Rational reserve = to_dollars(e->reserve);
      if (bid < reserve && reserve < v) {
        bid = reserve;
        why += ", raised to reserve";
      }
    } else {
      bid = v;
      why = "truthful bid";
    }
    bid = to_dollars(floor_cents(min_r(bid, to_dollars(budget))));
    if (bid <= 0 || to_dollars(e->reserve) > bid) continue;
    return buy_intent(*e, bid, why);
  }
  return Intent::idle("no auction clears at an acceptable bid");
}

namespace {

// Returns the validated intent, or nullopt with a note when it cannot be used.
std::optional<Intent> validate(Intent in, const PlanningContext& ctx, std::vector<std::string>& notes) {
  switch (in.kind) {
    case IntentKind::Idle:
      return in;
    case IntentKind::Buy: {
      const BoardEntry* e = find_entry(ctx.view, in.auction_id);
      if (e == nullptr || e->phase != Phase::Open) {
        notes.push_back("buy target '" + in.auction_id + "' is not an open auction");
        return std::nullopt;
      }
      if (e->seller == ctx.state.agent_id) {
        notes.push_back("buy target '" + in.auction_id + "' is the agent's own listing");
        return std::nullopt;
      }
      const Rational v = block_value(ctx.state.utility_per_mhz, e->capacity_mhz);
      const Rational cap = min_r(v, to_dollars(available_balance(ctx.state, ctx.view.own_pending_bids)));
      if (in.value > cap) {
        notes.push_back("bid " + format_decimal(in.value, 2) + " clamped to " + format_decimal(cap, 2));
        in.value = cap;
      } else if (in.value < 0) {
        notes.push_back("negative bid clamped to 0");
        in.value = Rational(0);
      }
      return in;
    }
    case IntentKind::Sell: {
      if (find_holding(ctx.state, in.token_id) == nullptr) {
        notes.push_back("sell target '" + in.token_id + "' is not held");
        return std::nullopt;
      }
      if (on_board(ctx.view, in.token_id)) {
        notes.push_back("sell target '" + in.token_id + "' is already listed");
        return std::nullopt;
      }
      if (in.reserve < 0) {
        notes.push_back("negative reserve");
        return std::nullopt;
      }
      if (in.mechanism != ctx.mechanism) {
        notes.push_back("listing mechanism forced to " + std::string(to_string(ctx.mechanism)));
        in.mechanism = ctx.mechanism;
      }
      return in;
    }
  }
  return std::nullopt;
}

}  // namespace

PlanResult plan(const PlanningContext& ctx, Planner& brain) {
  PlanResult out;
  std::optional<Intent> proposed;
  try {
    proposed = brain.propose(ctx);
  } catch (const std::exception& e) {
    out.notes.push_back("brain '" + brain.name() + "' failed: " + e.what());
  }
  if (proposed) proposed = validate(std::move(*proposed), ctx, out.notes);
  if (proposed) {
    out.intent = std::move(*proposed);
    return out;
  }
  out.used_fallback = true;
  out.notes.push_back("falling back to the default brain");
  DefaultPlanner fallback;
  auto intent = validate(fallback.propose(ctx), ctx, out.notes);
  out.intent = intent ? std::move(*intent) : Intent::idle("default brain produced no usable intent");
  return out;
}

// --- execution ------------------------------------------------------------

ActResult act(const Intent& intent, const AgentState& state, const MarketView& view,
              const AgentMemory& memory, std::mt19937_64& rng) {
  ActResult out;
  for (const auto& p : memory.pending) {
    if (p.revealed) continue;
    const BoardEntry* e = find_entry(view, p.auction_id);
    if (e == nullptr || e->phase != Phase::Revealing) continue;
    Action a;
    a.kind = ActionKind::Reveal;
    a.auction_id = p.auction_id;
    a.token_id = p.token_id;
    a.capacity_mhz = p.capacity_mhz;
    a.mechanism = e->mechanism;
    a.amount = p.value;
    a.salt = p.salt;
    out.actions.push_back(std::move(a));
  }

  switch (intent.kind) {
    case IntentKind::Idle:
      break;

    case IntentKind::Sell: {
      const Holding* h = find_holding(state, intent.token_id);
      if (h == nullptr) {
        out.rejections.push_back("sell rejected: token '" + intent.token_id + "' not owned");
        break;
      }
      if (on_board(view, intent.token_id)) {
        out.rejections.push_back("sell rejected: token '" + intent.token_id + "' already listed");
        break;
      }
      if (view.max_concurrent_listings && active_listings(state, view) >= *view.max_concurrent_listings) {
        out.rejections.push_back("sell rejected: concurrent listing limit reached");
        break;
      }
      if (intent.reserve < 0) {
        out.rejections.push_back("sell rejected: negative reserve");
        break;
      }
      Action a;
      a.kind = memory.last_reserve.count(intent.token_id) ? ActionKind::Relist : ActionKind::StartAuction;
      a.token_id = h->token_id;
      a.capacity_mhz = h->capacity_mhz;
      a.mechanism = intent.mechanism;
      a.amount = floor_cents(intent.reserve);
      out.actions.push_back(std::move(a));
      break;
    }

    case IntentKind::Buy: {
      const BoardEntry* e = find_entry(view, intent.auction_id);
      if (e == nullptr || e->phase != Phase::Open) {
        out.rejections.push_back("buy rejected: auction '" + intent.auction_id + "' not open");
        break;
      }
      if (e->seller == state.agent_id) {
        out.rejections.push_back("buy rejected: own listing");
        break;
      }
      const Cents value = floor_cents(intent.value);
      if (value < Cents(0)) {
        out.rejections.push_back("buy rejected: negative value");
        break;
      }
      // A re-bid replaces the earlier commitment on the same auction.
      std::vector<PendingBid> others;
      for (const auto& p : memory.pending) {
        if (p.auction_id != e->auction_id) others.push_back(p);
      }
      const Cents budget = available_balance(state, others);
      if (value > budget) {
        out.rejections.push_back("buy rejected: value " + format_dollars(value) + " exceeds balance " +
                                 format_dollars(budget));
        break;
      }
      Action a;
      a.auction_id = e->auction_id;
      a.token_id = e->token_id;
      a.capacity_mhz = e->capacity_mhz;
      a.mechanism = e->mechanism;
      if (e->mechanism == Mechanism::DirectSale) {
        if (e->reserve > value) {
          out.rejections.push_back("buy rejected: ask " + format_dollars(e->reserve) +
                                   " above willingness " + format_dollars(value));
          break;
        }
        a.kind = ActionKind::BuyNow;
        a.amount = e->reserve;
      } else {
        a.kind = ActionKind::PlaceBid;
        a.amount = value;
        a.salt = random_salt(rng);
      }
      out.actions.push_back(std::move(a));
      break;
    }
  }
  return out;
}

// --- agent ----------------------------------------------------------------

TradingAgent::TradingAgent(AgentId id, std::string org, Strategy strategy, PlanningConfig config,
                           std::shared_ptr<Planner> brain, std::uint64_t seed)
    : id_(std::move(id)),
      org_(std::move(org)),
      strategy_(strategy),
      config_(std::move(config)),
      brain_(brain ? std::move(brain) : std::make_shared<DefaultPlanner>()),
      rng_(seed) {
  config_.pricing.validate();
}

void TradingAgent::sync(const MarketView& view, const AgentState& state) {
  std::erase_if(memory_.pending, [&](const PendingBid& p) { return find_entry(view, p.auction_id) == nullptr; });
  std::erase_if(memory_.last_reserve,
                [&](const auto& kv) { return find_holding(state, kv.first) == nullptr; });
}

PlanResult TradingAgent::decide(const AgentState& state, const MarketView& view) const {
  if (strategy_ == Strategy::Heuristic) {
    return PlanResult{heuristic_decide(state, view, view.mechanism), false, {}};
  }
  const Assessment assessment = perceive(view);
  const PlanningContext ctx{assessment, state, view, view.mechanism, config_, memory_};
  PlanResult out = plan(ctx, *brain_);
  out.notes.insert(out.notes.begin(),
                   "assessment: " + std::string(to_string(assessment.market_structure)) + ", win rate " +
                       format_decimal(assessment.win_rate, 2) + ", demand " +
                       std::string(to_string(assessment.demand_trend)));
  return out;
}

ActResult TradingAgent::act(const Intent& intent, const AgentState& state, const MarketView& view) {
  return agents::act(intent, state, view, memory_, rng_);
}

void TradingAgent::record_result(const Action& action, bool accepted) {
  if (!accepted) return;
  switch (action.kind) {
    case ActionKind::StartAuction:
    case ActionKind::Relist:
      memory_.last_reserve[action.token_id] = to_dollars(action.amount);
      break;
    case ActionKind::PlaceBid: {
      std::erase_if(memory_.pending, [&](const PendingBid& p) { return p.auction_id == action.auction_id; });
      memory_.pending.push_back(
          PendingBid{action.auction_id, action.token_id, action.capacity_mhz, action.amount, action.salt, false});
      break;
    }
    case ActionKind::Reveal:
      for (auto& p : memory_.pending) {
        if (p.auction_id == action.auction_id) p.revealed = true;
      }
      break;
    case ActionKind::BuyNow:
      break;
  }
}

}  // namespace spectrum::agents
