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

#include "spectrum/simulator.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "spectrum/auction_house.hpp"
#include "spectrum/digest.hpp"
#include "spectrum/error.hpp"
#include "spectrum/external_brain.hpp"

namespace spectrum::sim {
namespace {

using agents::ActionKind;
using agents::TradingAgent;
using auction::Phase;

struct Participant {
  const AgentConfig* config = nullptr;
  std::unique_ptr<TradingAgent> agent;
  agents::TradeSummary stats;
  Rational profit_sum{0};
};

std::string token_name(std::int64_t i, std::int64_t count) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(std::max<std::int64_t>(count - 1, 0)).size();
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "token-" + digits;
}

class Simulation {
 public:
  Simulation(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options)
      : config_(config),
        options_(options),
        ledger_(ledger_options(config, options)),
        house_(ledger_, config.schedule),
        history_(config.bid_history_window),
        order_rng_(derive_seed(seed, 1)) {
    config_.seed = seed;
  }

  RunArtifacts run() {
    setup();
    ledger_.advance_tick();  // genesis is tick 0
    for (Tick t = 1; t <= config_.num_ticks; ++t) {
      step(t);
      ledger_.advance_tick();
    }
    return finish();
  }

 private:
  static ledger::LedgerOptions ledger_options(const ScenarioConfig& config, const RunOptions& options) {
    ledger::LedgerOptions out = options.ledger_options;
    out.expire_tokens = out.expire_tokens || config.expire_tokens;
    return out;
  }

  void setup() {
    validate(config_);
    std::shared_ptr<agents::Planner> brain = options_.brain;
    if (!brain && !config_.brain_endpoint.empty()) {
      brain = std::make_shared<agents::ExternalPlanner>(config_.brain_endpoint,
                                                        std::chrono::milliseconds(config_.brain_timeout_ms));
    }
    agents::PlanningConfig planning{config_.pricing, config_.grid_step_fraction};

    for (std::size_t i = 0; i < config_.agents.size(); ++i) {
      const AgentConfig& a = config_.agents[i];
      ledger_.open_account(a.id, a.org, a.initial_balance);
      Participant p;
      p.config = &a;
      p.agent = std::make_unique<TradingAgent>(a.id, a.org, config_.strategy_for(a), planning, brain,
                                               derive_seed(config_.seed, 1000 + i));
      participants_.push_back(std::move(p));
      if (a.role == Role::Buyer) ++num_buyers_;
    }

    const std::string owner = config_.token_owner();
    for (std::int64_t i = 0; i < config_.tokens.count; ++i) {
      ledger::TokenSpec spec;
      spec.token_id = token_name(i, config_.tokens.count);
      spec.center_freq_mhz = config_.tokens.center_freq_mhz + static_cast<double>(i) * config_.tokens.spacing_mhz;
      spec.bandwidth_mhz = config_.tokens.capacity_mhz;
      spec.slot_duration = config_.tokens.slot_duration;
      spec.location = config_.tokens.location;
      ledger_.mint_token(spec, owner);
    }
    minted_ = config_.tokens.count;
    initial_total_ = ledger_.total_balance();
    shapley_total_ = compute_shapley();

    ledger_.on_tick([this](Tick finished) { on_tick_closed(finished); });
  }

  Rational compute_shapley() const {
    const Rational capacity(ledger_.total_capacity());
    std::vector<metrics::ShapleyPlayer> players;
    std::size_t sellers = 0;
    Rational best(0);
    for (const auto& a : config_.agents) {
      players.push_back({a.id, a.utility_per_mhz, a.role == Role::Seller});
      if (a.role == Role::Seller) ++sellers;
      best = std::max(best, a.utility_per_mhz);
    }
    if (sellers == 1 && players.size() <= 10) return metrics::shapley_benchmark(players, capacity).total;
    // Efficiency axiom: the shares always add up to v(grand coalition).
    return sellers > 0 ? capacity * best : Rational(0);
  }

  std::map<AgentId, std::int64_t> needs_at(Tick t) const {
    std::map<AgentId, std::int64_t> out;
    for (const auto& a : config_.agents) out[a.id] = a.need_at(t);
    return out;
  }

  void on_tick_closed(Tick finished) {
    snapshots_.push_back(metrics::snapshot(finished, ledger_, surplus_, shapley_total_, needs_at(finished)));

    if (ledger_.total_balance() != initial_total_) {
      violations_.push_back("tick " + std::to_string(finished) + ": balance total changed to " +
                            format_dollars(ledger_.total_balance()));
    }
    std::int64_t held = 0;
    for (const auto& id : ledger_.agents()) held += static_cast<std::int64_t>(ledger_.holdings(id).size());
    if (held != minted_) {
      violations_.push_back("tick " + std::to_string(finished) + ": " + std::to_string(held) +
                            " tokens held, " + std::to_string(minted_) + " minted");
    }
    for (const auto& token : ledger_.token_ids()) {
      if (!ledger_.has_agent(ledger_.token(token).owner)) {
        violations_.push_back("tick " + std::to_string(finished) + ": " + token + " has no registered owner");
      }
    }
  }

  agents::AgentState state_of(const Participant& p, Tick t) const {
    agents::AgentState s;
    s.agent_id = p.config->id;
    s.balance = ledger_.balance(p.config->id);
    s.utility_per_mhz = p.config->utility_per_mhz;
    s.need_mhz = p.config->need_at(t);
    for (const auto& token : ledger_.holdings(p.config->id)) {
      if (ledger_.is_expired(token)) continue;
      s.holdings.push_back({token, ledger_.token(token).capacity_mhz});
    }
    return s;
  }

  agents::MarketView view_of(const Participant& p, Tick t) const {
    agents::MarketView v;
    v.tick = t;
    v.mechanism = config_.mechanism;
    v.open_auctions = house_.board();
    v.recent_winning_bids = history_;
    v.own_pending_bids = p.agent->memory().pending;
    v.trade_history = p.stats;
    if (p.stats.wins > 0) v.trade_history.realized_profit_per_win = p.profit_sum / static_cast<std::int64_t>(p.stats.wins);
    v.num_buyers = num_buyers_;
    v.max_concurrent_listings = config_.max_concurrent_listings;
    return v;
  }

  void log(Tick t, const std::string& who, const std::string& what) {
    events_.push_back("t=" + std::to_string(t) + " " + who + " " + what);
  }

  static std::string describe(const agents::Intent& in) {
    std::string out(agents::to_string(in.kind));
    if (in.kind == agents::IntentKind::Buy) out += " " + in.auction_id + " value " + format_decimal(in.value, 2);
    if (in.kind == agents::IntentKind::Sell) {
      out += " " + in.token_id + " via " + std::string(to_string(in.mechanism)) + " reserve " +
             format_decimal(in.reserve, 2);
    }
    if (!in.rationale.empty()) out += " (" + in.rationale + ")";
    return out;
  }

  void step(Tick t) {
    const std::size_t n = participants_.size();

    std::vector<agents::AgentState> states;
    std::vector<agents::MarketView> views;
    for (auto& p : participants_) {
      states.push_back(state_of(p, t));
      p.agent->sync(view_of(p, t), states.back());
      views.push_back(view_of(p, t));
    }

    std::vector<agents::PlanResult> plans(n);
    if (options_.parallel_planning && n > 1) {
      std::vector<std::future<agents::PlanResult>> jobs;
      for (std::size_t i = 0; i < n; ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] { return participants_[i].agent->decide(states[i], views[i]); }));
      }
      for (std::size_t i = 0; i < n; ++i) plans[i] = jobs[i].get();
    } else {
      for (std::size_t i = 0; i < n; ++i) plans[i] = participants_[i].agent->decide(states[i], views[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& id = participants_[i].config->id;
      for (const auto& note : plans[i].notes) log(t, id, note);
      log(t, id, "intent " + describe(plans[i].intent));
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    deterministic_shuffle(order, order_rng_);

    for (std::size_t i : order) {
      Participant& p = participants_[i];
      // Feasibility is judged against the market as it stands now, after
      // earlier agents in the permutation have acted.
      const auto state = state_of(p, t);
      const auto view = view_of(p, t);
      const auto result = p.agent->act(plans[i].intent, state, view);
      for (const auto& r : result.rejections) log(t, p.config->id, r);
      for (const auto& action : result.actions) execute(t, p, action);
    }

    capture_privacy(t);
    house_.advance(t);
    settle_new_outcomes();
  }

  void execute(Tick t, Participant& p, const agents::Action& a) {
    const AgentId& id = p.config->id;
    bool ok = true;
    try {
      switch (a.kind) {
        case ActionKind::StartAuction:
        case ActionKind::Relist: {
          const auto& listing = house_.create_listing(a.token_id, id, a.mechanism, a.amount);
          listings_.push_back(ListingRecord{listing.auction_id, a.token_id, id, t, a.amount,
                                            p.config->utility_per_mhz * a.capacity_mhz});
          log(t, id, std::string(agents::to_string(a.kind)) + " " + listing.auction_id + " " + a.token_id +
                         " reserve " + format_dollars(a.amount));
          break;
        }
        case ActionKind::PlaceBid: {
          house_.commit_bid(a.auction_id, id, commit_digest(a.salt, a.amount));
          ledger_.put_private(ledger::Caller::organization(p.agent->org()), p.agent->org(),
                              auction::bid_key(a.auction_id, id), commit_preimage(a.salt, a.amount));
          log(t, id, "place_bid " + a.auction_id + " (sealed)");
          break;
        }
        case ActionKind::Reveal:
          house_.reveal_bid(a.auction_id, id, a.salt, a.amount);
          log(t, id, "reveal " + a.auction_id);
          break;
        case ActionKind::BuyNow:
          ++p.stats.attempts;
          house_.buy_now(a.auction_id, id);
          log(t, id, "buy_now " + a.auction_id + " at " + format_dollars(a.amount));
          break;
      }
    } catch (const MarketError& e) {
      ok = false;
      log(t, id, std::string(agents::to_string(a.kind)) + " rejected by contract: " + e.what());
    }
    p.agent->record_result(a, ok);
    settle_new_outcomes();
  }

  Participant* find(const AgentId& id) {
    for (auto& p : participants_) {
      if (p.config->id == id) return &p;
    }
    return nullptr;
  }

  void settle_new_outcomes() {
    const auto& trades = ledger_.trades();
    for (; trades_seen_ < trades.size(); ++trades_seen_) {
      const auto& tr = trades[trades_seen_];
      const AgentConfig* buyer = config_.find_agent(tr.buyer);
      const AgentConfig* seller = config_.find_agent(tr.seller);
      const auto& s = surplus_.record_trade(ledger_, tr.trade_id, buyer->utility_per_mhz, seller->utility_per_mhz);
      trades_.push_back(TradeDetail{tr, buyer->utility_per_mhz, seller->utility_per_mhz, s});
      Participant* p = find(tr.buyer);
      ++p->stats.wins;
      p->profit_sum += s.buyer_profit;
    }

    for (const auto& a : house_.auctions()) {
      if (a.phase != Phase::Ended || !ended_.insert(a.auction_id).second) continue;
      const auto& outcome = *a.outcome;
      if (outcome.winner) {
        history_.record(to_dollars(a.mechanism == Mechanism::DirectSale ? *outcome.clearing_price
                                                                         : *outcome.winning_bid));
      }
      if (!is_sealed_bid(a.mechanism)) continue;

      const std::int64_t capacity = ledger_.token(a.token_id).capacity_mhz;
      metrics::AuctionWelfare w;
      w.auction_id = a.auction_id;
      w.seller_value = config_.find_agent(a.seller)->utility_per_mhz * capacity;
      w.best_bidder_value = Rational(0);
      for (const auto& [bidder, commit] : a.commits) {
        (void)commit;
        w.best_bidder_value = std::max(w.best_bidder_value, config_.find_agent(bidder)->utility_per_mhz * capacity);
        ++find(bidder)->stats.attempts;
      }
      if (outcome.winner) w.winner_value = config_.find_agent(*outcome.winner)->utility_per_mhz * capacity;
      sealed_.push_back(std::move(w));
    }
  }

  void capture_privacy(Tick t) {
    privacy::Snapshot snap;
    snap.tick = t;
    for (const auto& a : house_.auctions()) {
      if (a.phase != Phase::Open) continue;
      for (const auto& [bidder, commit] : a.commits) {
        (void)commit;
        const std::string org = config_.find_agent(bidder)->org;
        const std::string preimage =
            ledger_.get_private(ledger::Caller::auctioneer_role(), org, auction::bid_key(a.auction_id, bidder));
        const auto colon = preimage.rfind(':');
        snap.in_flight.push_back({a.auction_id, bidder, Cents(std::stoll(preimage.substr(colon + 1)))});
      }
    }
    if (snap.in_flight.empty()) return;
    snap.world = ledger_.world_state();
    privacy_.push_back(std::move(snap));
  }

  RunArtifacts finish() {
    RunArtifacts out;
    out.config = config_;
    out.agent_ids = ledger_.agents();
    out.transactions = ledger_.log();
    out.trades = trades_;
    out.metrics = snapshots_;
    out.listings = listings_;
    out.sealed_auctions = sealed_;
    out.privacy_report = privacy::verify_privacy(privacy_);
    out.privacy_snapshots = std::move(privacy_);
    out.invariant_violations = violations_;
    out.events = events_;
    out.final_world_state = ledger_.dump_world_state();

    Summary& s = out.summary;
    s.scenario = config_.name;
    s.mechanism = config_.mechanism;
    s.seed = config_.seed;
    s.trades = trades_.size();
    std::int64_t mhz = 0;
    for (const auto& t : trades_) {
      s.trade_value += to_dollars(t.trade.price);
      mhz += t.trade.capacity_mhz;
      s.buyer_profit += t.surplus.buyer_profit;
      s.seller_profit += t.surplus.seller_profit;
    }
    if (mhz > 0) s.avg_price_per_mhz = s.trade_value / mhz;
    s.surplus = surplus_.total();
    s.shapley = shapley_total_;
    s.efficiency = shapley_total_ > 0 ? metrics::efficiency_ratio(s.surplus, shapley_total_) : Rational(0);
    if (!snapshots_.empty()) {
      s.gini = snapshots_.back().gini;
      s.hhi = snapshots_.back().hhi;
    }

    std::vector<metrics::BlockSupply> supply;
    const AgentConfig* owner = config_.find_agent(config_.token_owner());
    for (const auto& token : ledger_.token_ids()) {
      supply.push_back({ledger_.token(token).capacity_mhz, owner->utility_per_mhz});
    }
    std::vector<metrics::BlockDemand> demand;
    for (const auto& a : config_.agents) {
      if (a.id != owner->id && a.need_at(0) > 0) demand.push_back({a.utility_per_mhz, a.need_at(0)});
    }
    // A buyer whose need grows over the run can absorb more than the static
    // optimum allows; the realised welfare then bounds the optimum instead.
    const Rational opt = std::max(metrics::optimal_welfare(supply, demand), surplus_.total());
    out.market_poa = econ::price_of_anarchy(opt, std::max(Rational(0), surplus_.total()));
    out.auction_poa = metrics::auction_price_of_anarchy(sealed_);
    return out;
  }

  ScenarioConfig config_;
  RunOptions options_;
  ledger::Ledger ledger_;
  auction::AuctionHouse house_;
  econ::BidHistory history_;
  std::mt19937_64 order_rng_;
  std::vector<Participant> participants_;
  int num_buyers_ = 0;
  std::int64_t minted_ = 0;
  Cents initial_total_;
  Rational shapley_total_{0};
  metrics::SurplusAccumulator surplus_;
  std::size_t trades_seen_ = 0;
  std::set<std::string> ended_;
  std::vector<TradeDetail> trades_;
  std::vector<metrics::MetricsSnapshot> snapshots_;
  std::vector<ListingRecord> listings_;
  std::vector<metrics::AuctionWelfare> sealed_;
  std::vector<privacy::Snapshot> privacy_;
  std::vector<std::string> violations_;
  std::vector<std::string> events_;
};

}  // namespace

RunArtifacts run(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options) {
  Simulation sim(config, seed, options);
  return sim.run();
}

}  // namespace spectrum::sim
