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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spectrum/agents.hpp"
#include "spectrum/auction_house.hpp"
#include "spectrum/economics.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/money.hpp"

namespace spectrum::sim {

enum class Role { Seller, Buyer };

std::string_view to_string(Role role);

struct AgentConfig {
  std::string id;
  std::string org;  // defaults to "Org<n>" by position
  Role role = Role::Buyer;
  Rational utility_per_mhz{0};
  Cents initial_balance;
  std::int64_t need_mhz = 0;
  std::int64_t need_ramp_mhz_per_tick = 0;  // N_i(t) = need + ramp * t
  std::optional<agents::Strategy> strategy;  // falls back to the scenario default

  std::int64_t need_at(std::int64_t tick) const;
};

struct TokenConfig {
  std::int64_t count = 25;
  std::int64_t capacity_mhz = 10;
  double center_freq_mhz = 3500.0;
  double spacing_mhz = 10.0;
  std::int64_t slot_duration = 1000;
  std::string location = "cell-0";
  std::string owner;  // empty: the first seller
};

struct ScenarioConfig {
  std::string name = "custom";
  Mechanism mechanism = Mechanism::SecondPrice;
  std::int64_t num_ticks = 100;
  std::uint64_t seed = 1;
  TokenConfig tokens;
  std::vector<AgentConfig> agents;
  econ::PricingPolicy pricing;
  agents::Strategy strategy = agents::Strategy::Pipeline;
  std::string brain_endpoint;
  std::int64_t brain_timeout_ms = 10000;
  std::size_t bid_history_window = 20;
  Rational grid_step_fraction{1, 100};
  std::optional<std::size_t> max_concurrent_listings;
  auction::Schedule schedule;
  bool expire_tokens = false;

  agents::Strategy strategy_for(const AgentConfig& agent) const;
  const AgentConfig* find_agent(const std::string& id) const;
  std::string token_owner() const;
};

/// Throws MarketError(ValidationError) naming the offending field path.
void validate(const ScenarioConfig& config);

/// Parses and validates. Unknown keys are rejected so typos surface.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScenarioConfig& config);

std::vector<std::string> preset_names();
std::optional<ScenarioConfig> preset(const std::string& name);

/// A preset name or a path to a JSON file.
ScenarioConfig load_scenario(const std::string& path_or_preset);

}  // namespace spectrum::sim
