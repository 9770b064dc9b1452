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

// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and sizes are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spectrum/agents.hpp"
#include "spectrum/auction_house.hpp"
#include "spectrum/digest.hpp"
#include "spectrum/economics.hpp"
#include "spectrum/metrics.hpp"
#include "spectrum/scenario.hpp"
#include "spectrum/simulator.hpp"

using namespace spectrum;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned parameters.
constexpr int kVickreyInstances = 200;
constexpr std::int64_t kVickreyMaxCents = 30000;  // $300 on a 1-cent grid
constexpr double kVickreySeconds = 10.0;
constexpr int kHistoryRounds = 100;
constexpr int kGiniVectors = 1000;
constexpr double kGiniTolerance = 1e-12;
constexpr double kHhiTolerance = 1e-12;
constexpr double kMetricsSeconds = 5.0;
constexpr std::int64_t kTicks = 100;
constexpr int kWelfareSeeds = 20;
constexpr int kHomogeneousSeeds = 10;
constexpr double kBuyerProfitShare = 0.05;

const Mechanism kMechanisms[] = {Mechanism::DirectSale, Mechanism::FirstPrice, Mechanism::SecondPrice};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const Rational& r, int places = 2) { return format_decimal(r, places); }

// Every run made here is also audited for conservation (criterion 8).
struct ConservationAudit {
  std::size_t runs = 0;
  std::size_t ticks = 0;
  std::vector<std::string> problems;

  void check(const sim::RunArtifacts& a) {
    ++runs;
    Cents cash(0);
    for (const auto& ag : a.config.agents) cash += ag.initial_balance;
    const std::int64_t capacity = a.config.tokens.count * a.config.tokens.capacity_mhz;
    for (const auto& snap : a.metrics) {
      ++ticks;
      Cents c(0);
      std::int64_t held = 0;
      for (const auto& s : snap.agents) {
        c += s.balance;
        held += s.capacity_mhz;
      }
      if (c != cash || (!a.config.expire_tokens && held != capacity)) {
        problems.push_back(a.config.name + " tick " + std::to_string(snap.tick) + ": totals drifted");
      }
    }
    for (const auto& v : a.invariant_violations) problems.push_back(a.config.name + ": " + v);
  }
};

ConservationAudit audit;

sim::RunArtifacts run_audited(const sim::ScenarioConfig& c, std::uint64_t seed, const sim::RunOptions& o = {}) {
  auto a = sim::run(c, seed, o);
  audit.check(a);
  return a;
}

sim::ScenarioConfig preset_with(const std::string& name, Mechanism m, agents::Strategy strategy) {
  auto c = *sim::preset(name);
  c.mechanism = m;
  c.num_ticks = kTicks;
  c.strategy = strategy;
  for (auto& a : c.agents) a.strategy.reset();
  return c;
}

sim::ScenarioConfig custom_market(const std::string& name, const Rational& seller_u,
                                  std::vector<Rational> buyer_us, const Rational& decay, Mechanism m) {
  sim::ScenarioConfig c;
  c.name = name;
  c.mechanism = m;
  c.num_ticks = 40;
  c.tokens.count = 5;
  c.pricing.decay = decay;
  sim::AgentConfig s;
  s.id = "agent-0";
  s.org = "Org1";
  s.role = sim::Role::Seller;
  s.utility_per_mhz = seller_u;
  s.initial_balance = dollars(5000);
  c.agents.push_back(s);
  for (std::size_t i = 0; i < buyer_us.size(); ++i) {
    sim::AgentConfig b;
    b.id = "agent-" + std::to_string(i + 1);
    b.org = "Org" + std::to_string(i + 2);
    b.utility_per_mhz = buyer_us[i];
    b.initial_balance = dollars(5000);
    b.need_mhz = 20;
    c.agents.push_back(b);
  }
  sim::validate(c);
  return c;
}

// --- 1 ---------------------------------------------------------------------

Outcome vickrey_truthfulness() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t deviations_checked = 0;
  std::size_t profitable = 0;
  std::vector<auction::SealedBid> bids;
  for (int inst = 0; inst < kVickreyInstances; ++inst) {
    const std::size_t n = 2 + uniform_index(rng, 4);
    std::vector<std::int64_t> values(n);
    for (auto& v : values) v = static_cast<std::int64_t>(uniform_index(rng, kVickreyMaxCents + 1));
    // No reserve: with one, a lone qualifier pays its own bid and shading pays.
    const Cents reserve(0);
    bids.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) bids[i] = {i, Cents(values[i]), i};

    auto utility = [&](std::size_t i) {
      const auto r = auction::resolve(bids, reserve, Mechanism::SecondPrice);
      return r.winner && *r.winner == i ? values[i] - r.price.count() : std::int64_t{0};
    };
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t truthful = utility(i);
      for (std::int64_t b = 0; b <= kVickreyMaxCents; ++b) {
        bids[i].value = Cents(b);
        if (utility(i) > truthful) ++profitable;
        ++deviations_checked;
      }
      bids[i].value = Cents(values[i]);
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = profitable == 0 && secs < kVickreySeconds;
  std::ostringstream ss;
  ss << profitable << " profitable deviations in " << deviations_checked << " checked, " << secs << " s";
  o.detail = ss.str();
  return o;
}

// --- 2 ---------------------------------------------------------------------

Outcome second_price_efficiency() {
  std::size_t auctions = 0;
  std::size_t bad = 0;
  Rational realized(0), best(0);
  bool poa_one = true;
  for (const char* name : {"scenario1", "scenario2"}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto a = run_audited(preset_with(name, Mechanism::SecondPrice, agents::Strategy::Pipeline), seed);
      for (const auto& w : a.sealed_auctions) {
        if (!w.winner_value) continue;
        ++auctions;
        if (*w.winner_value < w.best_bidder_value) ++bad;
        realized += *w.winner_value - w.seller_value;
        best += w.best_bidder_value - w.seller_value;
      }
      for (const auto& t : a.trades) {
        const Rational cap(t.trade.capacity_mhz);
        if (t.surplus.total != (t.buyer_utility - t.seller_utility) * cap) ++bad;
      }
      poa_one = poa_one && !a.auction_poa.market_failure && a.auction_poa.ratio == Rational(1);
    }
  }
  Outcome o;
  o.pass = auctions > 0 && bad == 0 && realized == best && poa_one;
  o.detail = std::to_string(auctions) + " finalized auctions, " + std::to_string(bad) +
             " misallocations, welfare " + fmt(realized) + " of " + fmt(best) + ", PoA " +
             (poa_one ? "1" : "!= 1");
  return o;
}

// --- 3 ---------------------------------------------------------------------

// Brute force over every grid point below V; lowest bid wins ties.
Rational oracle_bid(const Rational& v, const std::vector<Rational>& history, const Rational& step) {
  Rational best_bid(0), best_surplus(-1);
  for (std::int64_t k = 0; step * k < v; ++k) {
    const Rational b = step * k;
    const auto below = std::count_if(history.begin(), history.end(), [&](const Rational& w) { return w < b; });
    const Rational s = (v - b) * Rational(static_cast<std::int64_t>(below), static_cast<std::int64_t>(history.size()));
    if (s > best_surplus) {
      best_surplus = s;
      best_bid = b;
    }
  }
  return best_bid;
}

Outcome first_price_calibration() {
  std::mt19937_64 rng(77);
  int shade_mismatch = 0;
  for (int u = 1; u <= 50; ++u) {
    agents::AgentState s;
    s.agent_id = "buyer";
    s.balance = dollars(100000);
    s.utility_per_mhz = Rational(u, 4);
    s.need_mhz = 10;
    agents::MarketView view;
    view.mechanism = Mechanism::FirstPrice;
    view.num_buyers = 3;
    auction::BoardEntry e;
    e.auction_id = "a";
    e.token_id = "t";
    e.mechanism = Mechanism::FirstPrice;
    e.seller = "seller";
    e.reserve = Cents(0);
    e.capacity_mhz = 10;
    view.open_auctions.push_back(e);
    const auto in = agents::heuristic_decide(s, view, Mechanism::FirstPrice);
    const Rational v = s.utility_per_mhz * 10;
    if (in.kind != agents::IntentKind::Buy || in.value != Rational(2, 3) * v) ++shade_mismatch;
  }

  int history_mismatch = 0;
  for (int round = 0; round < kHistoryRounds; ++round) {
    const std::int64_t u = 1 + static_cast<std::int64_t>(uniform_index(rng, 40));
    agents::AgentState s;
    s.agent_id = "buyer";
    s.balance = dollars(100000);
    s.utility_per_mhz = Rational(u);
    s.need_mhz = 10;
    const Rational v = s.utility_per_mhz * 10;

    agents::MarketView view;
    view.mechanism = Mechanism::FirstPrice;
    view.num_buyers = 3;
    view.recent_winning_bids = econ::BidHistory(20);
    std::vector<Rational> history;
    const std::size_t len = 1 + uniform_index(rng, 20);
    for (std::size_t i = 0; i < len; ++i) {
      const Rational w(static_cast<std::int64_t>(uniform_index(rng, static_cast<std::uint64_t>(u) * 1200 + 1)), 100);
      view.recent_winning_bids.record(w);
      history.push_back(w);
    }
    auction::BoardEntry e;
    e.auction_id = "a";
    e.token_id = "t";
    e.mechanism = Mechanism::FirstPrice;
    e.seller = "seller";
    e.reserve = Cents(0);
    e.capacity_mhz = 10;
    view.open_auctions.push_back(e);

    agents::Assessment assessment;
    agents::PlanningConfig config;
    agents::AgentMemory memory;
    const agents::PlanningContext ctx{assessment, s, view, Mechanism::FirstPrice, config, memory};
    agents::DefaultPlanner brain;
    const auto chosen = agents::plan(ctx, brain).intent;
    const Rational expected = oracle_bid(v, history, config.grid_step_fraction * v);
    const bool ok = expected > 0 ? chosen.kind == agents::IntentKind::Buy && chosen.value == expected
                                 : chosen.kind == agents::IntentKind::Idle;
    if (!ok) ++history_mismatch;
  }
  Outcome o;
  o.pass = shade_mismatch == 0 && history_mismatch == 0;
  o.detail = "N=3 shade mismatches " + std::to_string(shade_mismatch) + "/50, oracle mismatches " +
             std::to_string(history_mismatch) + "/" + std::to_string(kHistoryRounds);
  return o;
}

// --- 4 ---------------------------------------------------------------------

Outcome price_skimming() {
  struct Case {
    Rational seller_u;
    std::vector<Rational> buyers;
    Rational decay;
  };
  const std::vector<Case> cases = {
      {Rational(10), {Rational(21, 2), Rational(9), Rational(12)}, Rational(1, 10)},
      {Rational(10), {Rational(9), Rational(8)}, Rational(1, 10)},
      {Rational(10), {Rational(101, 10), Rational(9)}, Rational(1, 20)},
      {Rational(7), {Rational(6)}, Rational(3, 10)},
  };
  std::size_t sequences = 0, relists = 0, violations = 0, floor_reached = 0;
  auto check_run = [&](const sim::RunArtifacts& a) {
    const auto& pricing = a.config.pricing;
    const double beta = to_double(pricing.markup);
    const double d = to_double(pricing.decay);
    std::map<std::pair<std::string, std::string>, std::vector<const sim::ListingRecord*>> by_token;
    for (const auto& l : a.listings) by_token[{l.seller, l.token_id}].push_back(&l);
    for (const auto& [key, seq] : by_token) {
      ++sequences;
      relists += seq.size() - 1;
      const Rational vs = seq.front()->seller_value;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (to_dollars(seq[i]->reserve) < vs) ++violations;
        if (i > 0 && seq[i]->reserve > seq[i - 1]->reserve) ++violations;
      }
      if (d > 0) {
        const auto bound = static_cast<std::size_t>(std::ceil(std::log(beta) / -std::log(1.0 - d)));
        if (seq.size() > bound) {
          if (to_dollars(seq[bound]->reserve) != vs) ++violations;
          ++floor_reached;
        }
      }
    }
  };
  for (const auto& c : cases) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      check_run(run_audited(custom_market("skimming", c.seller_u, c.buyers, c.decay, Mechanism::DirectSale), seed));
    }
  }
  for (const char* name : {"scenario1", "scenario2"}) {
    check_run(run_audited(preset_with(name, Mechanism::DirectSale, agents::Strategy::Pipeline), 1));
  }
  Outcome o;
  o.pass = violations == 0 && relists > 0 && floor_reached > 0;
  o.detail = std::to_string(sequences) + " reserve sequences, " + std::to_string(relists) + " relists, " +
             std::to_string(floor_reached) + " reached the floor in bound, " + std::to_string(violations) +
             " violations";
  return o;
}

// --- 5 ---------------------------------------------------------------------

Outcome market_failure() {
  std::size_t trades = 0;
  bool eta_zero = true, failure = true;
  for (Mechanism m : kMechanisms) {
    const auto c = custom_market("failure", Rational(10), {Rational(11), Rational(11), Rational(11)}, Rational(0), m);
    const auto a = run_audited(c, 1);
    trades += a.trades.size();
    eta_zero = eta_zero && a.summary.efficiency == Rational(0);
    failure = failure && a.market_poa.market_failure;
  }
  Outcome o;
  o.pass = trades == 0 && eta_zero && failure;
  o.detail = std::to_string(trades) + " trades, eta " + (eta_zero ? "0" : "> 0") + ", PoA " +
             (failure ? "MarketFailure" : "finite") + " across ds/fp/sp";
  return o;
}

// --- 6 ---------------------------------------------------------------------

Outcome metrics_oracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 10000.0);
  double worst = 0.0;
  for (int i = 0; i < kGiniVectors; ++i) {
    std::vector<double> xs(2 + uniform_index(rng, 30));
    for (auto& x : xs) x = dist(rng);
    worst = std::max(worst, std::abs(metrics::gini(xs) - metrics::gini_sorted_rank(xs)));
  }
  const std::vector<double> spike{0, 0, 0, 42};
  const bool spike_ok = std::abs(metrics::gini(spike) - 0.75) <= kGiniTolerance;

  bool hhi_ok = true;
  for (int k = 1; k <= 50; ++k) {
    const std::vector<double> shares(static_cast<std::size_t>(k), 1.0 / k);
    hhi_ok = hhi_ok && std::abs(metrics::hhi(shares) - 1.0 / k) <= kHhiTolerance;
  }

  bool shapley_ok = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<metrics::ShapleyPlayer> players;
      const std::size_t seller = uniform_index(rng, n);
      Rational max_u(0);
      for (std::size_t i = 0; i < n; ++i) {
        const Rational u(1 + static_cast<std::int64_t>(uniform_index(rng, 40)), 1 + static_cast<std::int64_t>(uniform_index(rng, 4)));
        players.push_back({"p" + std::to_string(i), u, i == seller});
        max_u = std::max(max_u, u);
      }
      const Rational cap(250);
      const auto r = metrics::shapley_benchmark(players, cap);
      const Rational sum = std::accumulate(r.values.begin(), r.values.end(), Rational(0));
      shapley_ok = shapley_ok && sum == r.total && r.total == cap * max_u;
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = worst <= kGiniTolerance && spike_ok && hhi_ok && shapley_ok && secs < kMetricsSeconds;
  std::ostringstream ss;
  ss << "gini forms max diff " << worst << ", gini([0,0,0,x]) " << (spike_ok ? "0.75" : "wrong") << ", hhi 1/k "
     << (hhi_ok ? "ok" : "wrong") << ", shapley efficiency " << (shapley_ok ? "exact" : "broken") << ", " << secs
     << " s";
  o.detail = ss.str();
  return o;
}

// --- 7 ---------------------------------------------------------------------

Outcome privacy_scan() {
  std::size_t snapshots = 0, values = 0, findings = 0;
  for (const char* name : {"scenario1", "scenario2"}) {
    for (Mechanism m : kMechanisms) {
      const auto a = run_audited(preset_with(name, m, agents::Strategy::Pipeline), 1);
      snapshots += a.privacy_report.snapshots_scanned;
      values += a.privacy_report.values_checked;
      findings += a.privacy_report.findings.size();
    }
  }
  sim::RunOptions leak;
  leak.ledger_options.leak_private_values = true;
  const auto mutated = run_audited(preset_with("scenario1", Mechanism::SecondPrice, agents::Strategy::Pipeline), 1, leak);
  const std::size_t caught = mutated.privacy_report.findings.size();
  Outcome o;
  o.pass = findings == 0 && values > 0 && caught >= 1;
  o.detail = std::to_string(findings) + " findings over " + std::to_string(snapshots) + " snapshots / " +
             std::to_string(values) + " bids; plaintext mutation caught " + std::to_string(caught) + " times";
  return o;
}

// --- 9 ---------------------------------------------------------------------

Outcome directional_welfare(Rational& sp_mean, Rational& fp_mean) {
  Rational sp(0), fp(0);
  for (int seed = 1; seed <= kWelfareSeeds; ++seed) {
    sp += run_audited(preset_with("scenario1", Mechanism::SecondPrice, agents::Strategy::Pipeline), seed).summary.surplus;
    fp += run_audited(preset_with("scenario1", Mechanism::FirstPrice, agents::Strategy::Pipeline), seed).summary.surplus;
  }
  sp_mean = sp / kWelfareSeeds;
  fp_mean = fp / kWelfareSeeds;
  Outcome o;
  o.pass = sp_mean >= fp_mean;
  o.detail = "mean surplus over " + std::to_string(kWelfareSeeds) + " seeds: second-price " + fmt(sp_mean) +
             ", first-price " + fmt(fp_mean);
  return o;
}

// --- 10 --------------------------------------------------------------------

Outcome homogeneous_pathology() {
  Rational buyer_profit(0), value(0), surplus(0);
  std::size_t trades = 0;
  bool all_positive = true;
  for (int seed = 1; seed <= kHomogeneousSeeds; ++seed) {
    const auto a = run_audited(preset_with("scenario2", Mechanism::SecondPrice, agents::Strategy::Pipeline), seed);
    buyer_profit += a.summary.buyer_profit;
    value += a.summary.trade_value;
    surplus += a.summary.surplus;
    trades += a.summary.trades;
    all_positive = all_positive && a.summary.surplus > 0;
  }
  Outcome o;
  if (trades == 0) {
    o.pass = false;
    o.detail = "no trades";
    return o;
  }
  const Rational n(static_cast<std::int64_t>(trades));
  const double share = to_double(buyer_profit / value);
  o.pass = all_positive && share <= kBuyerProfitShare;
  std::ostringstream ss;
  ss << "buyer profit per trade " << fmt(buyer_profit / n) << " vs trade value " << fmt(value / n) << " ("
     << share * 100 << "% <= " << kBuyerProfitShare * 100 << "%), mean surplus "
     << fmt(surplus / kHomogeneousSeeds);
  o.detail = ss.str();
  return o;
}

// --- 11 --------------------------------------------------------------------

Outcome determinism() {
  std::size_t pairs = 0, differ = 0;
  for (auto strategy : {agents::Strategy::Heuristic, agents::Strategy::Pipeline}) {
    for (Mechanism m : kMechanisms) {
      const auto c = preset_with("scenario1", m, strategy);
      const auto a = run_audited(c, 99);
      const auto b = run_audited(c, 99);
      std::string la, lb;
      for (const auto& tx : a.transactions) la += ledger::to_json(tx).dump() + "\n";
      for (const auto& tx : b.transactions) lb += ledger::to_json(tx).dump() + "\n";
      ++pairs;
      if (la != lb || a.final_world_state != b.final_world_state) ++differ;
    }
  }
  Outcome o;
  o.pass = differ == 0;
  o.detail = std::to_string(pairs - differ) + "/" + std::to_string(pairs) + " run pairs byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Line {
    int id;
    std::string name;
    Outcome outcome;
  };
  std::vector<Line> lines;
  auto record = [&](int id, const std::string& name, const std::function<Outcome()>& fn) {
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("threw: ") + e.what();
    }
    lines.push_back({id, name, out});
  };

  Rational sp_mean(0), fp_mean(0);
  record(1, "vickrey-truthfulness", vickrey_truthfulness);
  record(2, "second-price-efficiency", second_price_efficiency);
  record(3, "first-price-calibration", first_price_calibration);
  record(4, "price-skimming", price_skimming);
  record(5, "market-failure-poa", market_failure);
  record(6, "metrics-oracles", metrics_oracles);
  record(7, "privacy", privacy_scan);
  record(9, "directional-welfare", [&] { return directional_welfare(sp_mean, fp_mean); });
  record(10, "homogeneous-pathology", homogeneous_pathology);
  record(11, "determinism", determinism);
  // Conservation covers every run made by the criteria above.
  record(8, "conservation", [] {
    Outcome o;
    o.pass = audit.problems.empty() && audit.runs > 0;
    o.detail = std::to_string(audit.runs) + " runs, " + std::to_string(audit.ticks) + " tick snapshots, " +
               std::to_string(audit.problems.size()) + " problems";
    if (!audit.problems.empty()) o.detail += " (first: " + audit.problems.front() + ")";
    return o;
  });

  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  for (const auto& l : lines) {
    std::printf("[%s] %2d %-24s %s\n", l.outcome.pass ? "PASS" : "FAIL", l.id, l.name.c_str(),
                l.outcome.detail.c_str());
  }
  const bool all = std::all_of(lines.begin(), lines.end(), [](const Line& l) { return l.outcome.pass; });
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
