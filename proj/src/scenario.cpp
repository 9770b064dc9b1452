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

#include "spectrum/scenario.hpp"

#include <fstream>
#include <set>

#include "spectrum/error.hpp"

namespace spectrum::sim {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw MarketError(ErrorCode::ValidationError, path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  std::set<std::string> allowed(known.begin(), known.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) invalid(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

const json* field(const json& obj, const char* name) {
  const auto it = obj.find(name);
  return it == obj.end() ? nullptr : &*it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) invalid(path, "expected a number");
  return v.get<double>();
}

std::int64_t integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) invalid(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) invalid(path, "expected a string");
  return v.get<std::string>();
}

bool bool_at(const json& v, const std::string& path) {
  if (!v.is_boolean()) invalid(path, "expected true or false");
  return v.get<bool>();
}

agents::Strategy strategy_at(const json& v, const std::string& path) {
  const auto s = agents::parse_strategy(string_at(v, path));
  if (!s) invalid(path, "expected \"heuristic\" or \"pipeline\"");
  return *s;
}

double rational_json(const Rational& r) { return to_double(r); }

AgentConfig make_agent(int index, Role role, std::int64_t utility, std::int64_t need) {
  AgentConfig a;
  a.id = "agent-" + std::to_string(index);
  a.org = "Org" + std::to_string(index + 1);
  a.role = role;
  a.utility_per_mhz = Rational(utility);
  a.initial_balance = dollars(5000);
  a.need_mhz = need;
  return a;
}

ScenarioConfig base_preset(const std::string& name, std::initializer_list<std::int64_t> buyer_utilities) {
  ScenarioConfig c;
  c.name = name;
  c.agents.push_back(make_agent(0, Role::Seller, 5, 0));
  int i = 1;
  for (auto u : buyer_utilities) c.agents.push_back(make_agent(i++, Role::Buyer, u, 100));
  return c;
}

}  // namespace

std::string_view to_string(Role role) { return role == Role::Seller ? "seller" : "buyer"; }

std::int64_t AgentConfig::need_at(std::int64_t tick) const {
  return std::max<std::int64_t>(0, need_mhz + need_ramp_mhz_per_tick * tick);
}

agents::Strategy ScenarioConfig::strategy_for(const AgentConfig& agent) const {
  return agent.strategy.value_or(strategy);
}

const AgentConfig* ScenarioConfig::find_agent(const std::string& id) const {
  for (const auto& a : agents) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

std::string ScenarioConfig::token_owner() const {
  if (!tokens.owner.empty()) return tokens.owner;
  for (const auto& a : agents) {
    if (a.role == Role::Seller) return a.id;
  }
  return {};
}

void validate(const ScenarioConfig& c) {
  if (c.num_ticks < 1) invalid("num_ticks", "must be at least 1");
  if (c.tokens.count < 0) invalid("tokens.count", "must be non-negative");
  if (c.tokens.capacity_mhz <= 0) invalid("tokens.capacity_mhz", "must be positive");
  if (c.tokens.slot_duration <= 0) invalid("tokens.slot_duration", "must be positive");
  if (c.pricing.markup <= 1) invalid("pricing.markup", "must exceed 1");
  if (c.pricing.decay < 0 || c.pricing.decay >= 1) invalid("pricing.decay", "must lie in [0, 1)");
  if (c.bid_history_window == 0) invalid("bid_history_window", "must be positive");
  if (c.grid_step_fraction <= 0) invalid("grid_step_fraction", "must be positive");
  if (c.brain_timeout_ms <= 0) invalid("brain.timeout_ms", "must be positive");
  if (c.max_concurrent_listings && *c.max_concurrent_listings == 0) {
    invalid("max_concurrent_listings", "must be positive when set");
  }
  if (c.schedule.bidding_ticks < 1) invalid("schedule.bidding_ticks", "must be at least 1");
  if (c.schedule.reveal_ticks < 1) invalid("schedule.reveal_ticks", "must be at least 1");

  std::set<std::string> ids;
  std::size_t sellers = 0;
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    const auto& a = c.agents[i];
    const std::string path = "agents[" + std::to_string(i) + "]";
    if (a.id.empty()) invalid(path + ".id", "must not be empty");
    if (!ids.insert(a.id).second) invalid(path + ".id", "duplicate id '" + a.id + "'");
    if (a.utility_per_mhz < 0) invalid(path + ".utility_per_mhz", "must be non-negative");
    if (a.initial_balance < Cents(0)) invalid(path + ".initial_balance", "must be non-negative");
    if (a.need_mhz < 0) invalid(path + ".need_mhz", "must be non-negative");
    if (a.role == Role::Seller) ++sellers;
  }
  if (sellers == 0) invalid("agents", "at least one seller is required");
  if (!c.tokens.owner.empty()) {
    const AgentConfig* owner = c.find_agent(c.tokens.owner);
    if (owner == nullptr) invalid("tokens.owner", "unknown agent '" + c.tokens.owner + "'");
  }
}

ScenarioConfig scenario_from_json(const json& doc) {
  if (!doc.is_object()) invalid("$", "expected an object");
  reject_unknown(doc, "",
                 {"name", "mechanism", "num_ticks", "seed", "tokens", "agents", "pricing", "strategy", "brain",
                  "bid_history_window", "grid_step_fraction", "max_concurrent_listings", "schedule",
                  "expire_tokens"});
  ScenarioConfig c;
  if (auto v = field(doc, "name")) c.name = string_at(*v, "name");
  if (auto v = field(doc, "mechanism")) {
    const auto m = parse_mechanism(string_at(*v, "mechanism"));
    if (!m) invalid("mechanism", "expected ds, fp or sp");
    c.mechanism = *m;
  }
  if (auto v = field(doc, "num_ticks")) c.num_ticks = integer_at(*v, "num_ticks");
  if (auto v = field(doc, "seed")) {
    if (!v->is_number_unsigned()) invalid("seed", "expected a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
  if (auto v = field(doc, "tokens")) {
    if (!v->is_object()) invalid("tokens", "expected an object");
    reject_unknown(*v, "tokens",
                   {"count", "capacity_mhz", "center_freq_mhz", "spacing_mhz", "slot_duration", "location", "owner"});
    if (auto f = field(*v, "count")) c.tokens.count = integer_at(*f, "tokens.count");
    if (auto f = field(*v, "capacity_mhz")) c.tokens.capacity_mhz = integer_at(*f, "tokens.capacity_mhz");
    if (auto f = field(*v, "center_freq_mhz")) c.tokens.center_freq_mhz = number_at(*f, "tokens.center_freq_mhz");
    if (auto f = field(*v, "spacing_mhz")) c.tokens.spacing_mhz = number_at(*f, "tokens.spacing_mhz");
    if (auto f = field(*v, "slot_duration")) c.tokens.slot_duration = integer_at(*f, "tokens.slot_duration");
    if (auto f = field(*v, "location")) c.tokens.location = string_at(*f, "tokens.location");
    if (auto f = field(*v, "owner")) c.tokens.owner = string_at(*f, "tokens.owner");
  }
  if (auto v = field(doc, "agents")) {
    if (!v->is_array()) invalid("agents", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& item = (*v)[i];
      const std::string path = "agents[" + std::to_string(i) + "]";
      if (!item.is_object()) invalid(path, "expected an object");
      reject_unknown(item, path,
                     {"id", "org", "role", "utility_per_mhz", "initial_balance", "need_mhz",
                      "need_ramp_mhz_per_tick", "strategy"});
      AgentConfig a;
      a.id = "agent-" + std::to_string(i);
      a.org = "Org" + std::to_string(i + 1);
      if (auto f = field(item, "id")) a.id = string_at(*f, path + ".id");
      if (auto f = field(item, "org")) a.org = string_at(*f, path + ".org");
      const json* role = field(item, "role");
      if (role == nullptr) invalid(path + ".role", "required");
      const std::string r = string_at(*role, path + ".role");
      if (r == "seller") {
        a.role = Role::Seller;
      } else if (r == "buyer") {
        a.role = Role::Buyer;
      } else {
        invalid(path + ".role", "expected \"seller\" or \"buyer\"");
      }
      const json* u = field(item, "utility_per_mhz");
      if (u == nullptr) invalid(path + ".utility_per_mhz", "required");
      a.utility_per_mhz = rational_from_double(number_at(*u, path + ".utility_per_mhz"));
      if (auto f = field(item, "initial_balance")) {
        a.initial_balance = floor_cents(rational_from_double(number_at(*f, path + ".initial_balance")));
      }
      if (auto f = field(item, "need_mhz")) a.need_mhz = integer_at(*f, path + ".need_mhz");
      if (auto f = field(item, "need_ramp_mhz_per_tick")) {
        a.need_ramp_mhz_per_tick = integer_at(*f, path + ".need_ramp_mhz_per_tick");
      }
      if (auto f = field(item, "strategy")) a.strategy = strategy_at(*f, path + ".strategy");
      c.agents.push_back(std::move(a));
    }
  }
  if (auto v = field(doc, "pricing")) {
    if (!v->is_object()) invalid("pricing", "expected an object");
    reject_unknown(*v, "pricing", {"markup", "decay"});
    if (auto f = field(*v, "markup")) c.pricing.markup = rational_from_double(number_at(*f, "pricing.markup"));
    if (auto f = field(*v, "decay")) c.pricing.decay = rational_from_double(number_at(*f, "pricing.decay"));
  }
  if (auto v = field(doc, "strategy")) c.strategy = strategy_at(*v, "strategy");
  if (auto v = field(doc, "brain")) {
    if (!v->is_object()) invalid("brain", "expected an object");
    reject_unknown(*v, "brain", {"endpoint", "timeout_ms"});
    if (auto f = field(*v, "endpoint")) c.brain_endpoint = string_at(*f, "brain.endpoint");
    if (auto f = field(*v, "timeout_ms")) c.brain_timeout_ms = integer_at(*f, "brain.timeout_ms");
  }
  if (auto v = field(doc, "bid_history_window")) {
    const auto w = integer_at(*v, "bid_history_window");
    if (w <= 0) invalid("bid_history_window", "must be positive");
    c.bid_history_window = static_cast<std::size_t>(w);
  }
  if (auto v = field(doc, "grid_step_fraction")) {
    c.grid_step_fraction = rational_from_double(number_at(*v, "grid_step_fraction"));
  }
  if (auto v = field(doc, "max_concurrent_listings"); v && !v->is_null()) {
    const auto m = integer_at(*v, "max_concurrent_listings");
    if (m <= 0) invalid("max_concurrent_listings", "must be positive when set");
    c.max_concurrent_listings = static_cast<std::size_t>(m);
  }
  if (auto v = field(doc, "schedule")) {
    if (!v->is_object()) invalid("schedule", "expected an object");
    reject_unknown(*v, "schedule", {"bidding_ticks", "reveal_ticks"});
    if (auto f = field(*v, "bidding_ticks")) c.schedule.bidding_ticks = integer_at(*f, "schedule.bidding_ticks");
    if (auto f = field(*v, "reveal_ticks")) c.schedule.reveal_ticks = integer_at(*f, "schedule.reveal_ticks");
  }
  if (auto v = field(doc, "expire_tokens")) c.expire_tokens = bool_at(*v, "expire_tokens");
  validate(c);
  return c;
}

json to_json(const ScenarioConfig& c) {
  json agents = json::array();
  for (const auto& a : c.agents) {
    json item = {
        {"id", a.id},
        {"org", a.org},
        {"role", std::string(to_string(a.role))},
        {"utility_per_mhz", rational_json(a.utility_per_mhz)},
        {"initial_balance", rational_json(to_dollars(a.initial_balance))},
        {"need_mhz", a.need_mhz},
        {"need_ramp_mhz_per_tick", a.need_ramp_mhz_per_tick},
    };
    if (a.strategy) item["strategy"] = std::string(agents::to_string(*a.strategy));
    agents.push_back(std::move(item));
  }
  return {
      {"name", c.name},
      {"mechanism", std::string(short_name(c.mechanism))},
      {"num_ticks", c.num_ticks},
      {"seed", c.seed},
      {"tokens",
       {{"count", c.tokens.count},
        {"capacity_mhz", c.tokens.capacity_mhz},
        {"center_freq_mhz", c.tokens.center_freq_mhz},
        {"spacing_mhz", c.tokens.spacing_mhz},
        {"slot_duration", c.tokens.slot_duration},
        {"location", c.tokens.location},
        {"owner", c.tokens.owner}}},
      {"agents", agents},
      {"pricing", {{"markup", rational_json(c.pricing.markup)}, {"decay", rational_json(c.pricing.decay)}}},
      {"strategy", std::string(agents::to_string(c.strategy))},
      {"brain", {{"endpoint", c.brain_endpoint}, {"timeout_ms", c.brain_timeout_ms}}},
      {"bid_history_window", c.bid_history_window},
      {"grid_step_fraction", rational_json(c.grid_step_fraction)},
      {"max_concurrent_listings",
       c.max_concurrent_listings ? json(*c.max_concurrent_listings) : json(nullptr)},
      {"schedule", {{"bidding_ticks", c.schedule.bidding_ticks}, {"reveal_ticks", c.schedule.reveal_ticks}}},
      {"expire_tokens", c.expire_tokens},
  };
}

std::vector<std::string> preset_names() { return {"scenario1", "scenario2"}; }

std::optional<ScenarioConfig> preset(const std::string& name) {
  // Heterogeneous buyers, then a homogeneous market.
  if (name == "scenario1") return base_preset(name, {10, 15, 20});
  if (name == "scenario2") return base_preset(name, {20, 20, 20});
  return std::nullopt;
}

ScenarioConfig load_scenario(const std::string& path_or_preset) {
  if (auto p = preset(path_or_preset)) return *p;
  std::ifstream in(path_or_preset);
  if (!in) throw MarketError(ErrorCode::IoError, "cannot open scenario '" + path_or_preset + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MarketError(ErrorCode::ParseError, path_or_preset + ": " + e.what());
  }
  return scenario_from_json(doc);
}

}  // namespace spectrum::sim
