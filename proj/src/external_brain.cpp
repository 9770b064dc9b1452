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

#include "spectrum/external_brain.hpp"

#include "httplib.h"
#include "spectrum/error.hpp"

namespace spectrum::agents {
namespace {

double dollars_of(Cents c) { return to_double(to_dollars(c)); }

Rational read_amount(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number()) {
    throw MarketError(ErrorCode::BrainFailure, std::string("response lacks numeric '") + field + "'");
  }
  return rational_from_double(doc[field].get<double>());
}

std::string read_id(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_string() || doc[field].get<std::string>().empty()) {
    throw MarketError(ErrorCode::BrainFailure, std::string("response lacks '") + field + "'");
  }
  return doc[field].get<std::string>();
}

}  // namespace

nlohmann::json planning_request(const PlanningContext& ctx) {
  const auto& a = ctx.assessment;
  const auto& s = ctx.state;
  const auto& v = ctx.view;

  auto holdings = nlohmann::json::array();
  for (const auto& h : s.holdings) {
    const bool listed = std::any_of(v.open_auctions.begin(), v.open_auctions.end(),
                                    [&](const auto& e) { return e.token_id == h.token_id; });
    holdings.push_back({{"token", h.token_id}, {"capacity_mhz", h.capacity_mhz}, {"listed", listed}});
  }
  auto pending = nlohmann::json::array();
  for (const auto& p : v.own_pending_bids) {
    pending.push_back({{"auction_id", p.auction_id}, {"value", dollars_of(p.value)}, {"revealed", p.revealed}});
  }
  auto board = nlohmann::json::array();
  for (const auto& e : v.open_auctions) {
    board.push_back({
        {"auction_id", e.auction_id},
        {"token", e.token_id},
        {"mechanism", std::string(to_string(e.mechanism))},
        {"seller", e.seller},
        {"reserve", dollars_of(e.reserve)},
        {"phase", std::string(auction::to_string(e.phase))},
        {"commit_count", e.commit_count},
        {"capacity_mhz", e.capacity_mhz},
    });
  }
  auto history = nlohmann::json::array();
  for (const auto& b : v.recent_winning_bids.winning_bids()) history.push_back(to_double(b));

  return {
      {"agent", s.agent_id},
      {"tick", v.tick},
      {"mechanism", std::string(to_string(ctx.mechanism))},
      {"assessment",
       {{"market_structure", std::string(to_string(a.market_structure))},
        {"win_rate", to_double(a.win_rate)},
        {"demand_trend", std::string(to_string(a.demand_trend))},
        {"risk_note", a.risk_note}}},
      {"state",
       {{"balance", dollars_of(s.balance)},
        {"utility_per_mhz", to_double(s.utility_per_mhz)},
        {"need_mhz", s.need_mhz},
        {"held_capacity_mhz", s.held_capacity_mhz()},
        {"demand_gap_mhz", demand_gap(s)},
        {"holdings", holdings},
        {"pending_bids", pending}}},
      {"open_auctions", board},
      {"bid_history", history},
  };
}

Intent parse_intent_response(const nlohmann::json& doc, Mechanism mechanism) {
  if (!doc.is_object() || !doc.contains("intent") || !doc["intent"].is_string()) {
    throw MarketError(ErrorCode::BrainFailure, "response lacks 'intent'");
  }
  Intent out;
  const std::string kind = doc["intent"].get<std::string>();
  if (kind == "idle") {
    out.kind = IntentKind::Idle;
  } else if (kind == "buy") {
    out.kind = IntentKind::Buy;
    out.auction_id = read_id(doc, "auction_id");
    out.value = read_amount(doc, "value");
  } else if (kind == "sell") {
    out.kind = IntentKind::Sell;
    out.token_id = read_id(doc, "token_id");
    out.reserve = read_amount(doc, "reserve");
    out.mechanism = mechanism;
  } else {
    throw MarketError(ErrorCode::BrainFailure, "unknown intent '" + kind + "'");
  }
  if (doc.contains("rationale") && doc["rationale"].is_string()) {
    out.rationale = doc["rationale"].get<std::string>();
  }
  return out;
}

ExternalPlanner::ExternalPlanner(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  const auto scheme = endpoint_.find("://");
  if (scheme == std::string::npos) {
    throw MarketError(ErrorCode::InvalidInput, "brain endpoint needs a scheme: " + endpoint_);
  }
  const auto slash = endpoint_.find('/', scheme + 3);
  host_ = endpoint_.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : endpoint_.substr(slash);
}

Intent ExternalPlanner::propose(const PlanningContext& ctx) {
  httplib::Client client(host_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  const auto res = client.Post(path_, planning_request(ctx).dump(), "application/json");
  if (!res) {
    throw MarketError(ErrorCode::BrainFailure, "transport: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw MarketError(ErrorCode::BrainFailure, "HTTP status " + std::to_string(res->status));
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw MarketError(ErrorCode::BrainFailure, std::string("unparseable response: ") + e.what());
  }
  return parse_intent_response(doc, ctx.mechanism);
}

PlanResult plan_external(const PlanningContext& ctx, const std::string& endpoint,
                         std::chrono::milliseconds timeout) {
  ExternalPlanner brain(endpoint, timeout);
  return plan(ctx, brain);
}

}  // namespace spectrum::agents
