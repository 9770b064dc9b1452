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

#include <filesystem>
#include <fstream>

#include "spectrum/scenario.hpp"
#include "test_support.hpp"

using namespace spectrum;
using namespace spectrum::sim;
using nlohmann::json;
using spectrum::testing::code_of;

namespace {

std::string message_of(const json& doc) {
  try {
    scenario_from_json(doc);
  } catch (const MarketError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    return e.what();
  }
  ADD_FAILURE() << "expected a validation error";
  return {};
}

json minimal() {
  return json{{"agents",
               {{{"role", "seller"}, {"utility_per_mhz", 5}, {"initial_balance", 100}},
                {{"role", "buyer"}, {"utility_per_mhz", 12.5}, {"initial_balance", 100}, {"need_mhz", 20}}}}};
}

}  // namespace

TEST(Scenario, Presets) {
  const auto one = preset("scenario1");
  ASSERT_TRUE(one);
  ASSERT_EQ(one->agents.size(), 4u);
  EXPECT_EQ(one->agents[0].role, Role::Seller);
  EXPECT_EQ(one->agents[1].utility_per_mhz, Rational(10));
  EXPECT_EQ(one->agents[3].utility_per_mhz, Rational(20));
  EXPECT_EQ(one->agents[2].org, "Org3");
  EXPECT_NO_THROW(validate(*one));

  const auto two = preset("scenario2");
  ASSERT_TRUE(two);
  for (std::size_t i = 1; i < two->agents.size(); ++i) EXPECT_EQ(two->agents[i].utility_per_mhz, Rational(20));
  EXPECT_FALSE(preset("scenario3"));
}

TEST(Scenario, ParsesDefaultsAndIds) {
  const auto c = scenario_from_json(minimal());
  EXPECT_EQ(c.agents[0].id, "agent-0");
  EXPECT_EQ(c.agents[1].org, "Org2");
  EXPECT_EQ(c.agents[1].utility_per_mhz, Rational(25, 2));
  EXPECT_EQ(c.agents[1].initial_balance, dollars(100));
  EXPECT_EQ(c.token_owner(), "agent-0");
  EXPECT_EQ(c.mechanism, Mechanism::SecondPrice);
}

TEST(Scenario, JsonRoundTrip) {
  auto doc = minimal();
  doc["mechanism"] = "fp";
  doc["pricing"] = {{"markup", 1.2}, {"decay", 0.05}};
  doc["max_concurrent_listings"] = 3;
  const auto c = scenario_from_json(doc);
  const auto again = scenario_from_json(to_json(c));
  EXPECT_EQ(to_json(again), to_json(c));
  EXPECT_EQ(again.pricing.markup, Rational(6, 5));
  EXPECT_EQ(again.max_concurrent_listings, std::optional<std::size_t>(3));
}

TEST(Scenario, ValidationNamesTheField) {
  auto doc = minimal();
  doc["agents"][1]["utility_per_mhz"] = -1;
  EXPECT_NE(message_of(doc).find("agents[1].utility_per_mhz"), std::string::npos);

  doc = minimal();
  doc["pricing"] = {{"decay", 1.0}};
  EXPECT_NE(message_of(doc).find("pricing.decay"), std::string::npos);

  doc = minimal();
  doc["mechanism"] = "dutch";
  EXPECT_NE(message_of(doc).find("mechanism"), std::string::npos);

  doc = minimal();
  doc["agents"][0]["role"] = "buyer";
  EXPECT_NE(message_of(doc).find("seller"), std::string::npos);

  doc = minimal();
  doc["agents"][1]["id"] = "agent-0";
  EXPECT_NE(message_of(doc).find("duplicate"), std::string::npos);
}

TEST(Scenario, UnknownKeysRejected) {
  auto doc = minimal();
  doc["num_tick"] = 5;
  EXPECT_NE(message_of(doc).find("num_tick"), std::string::npos);
  doc = minimal();
  doc["tokens"] = {{"capacity", 10}};
  EXPECT_NE(message_of(doc).find("tokens.capacity"), std::string::npos);
}

TEST(Scenario, LoadFromFileAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "spectrum_scenario_test.json";
  {
    std::ofstream f(path);
    f << minimal().dump();
  }
  EXPECT_EQ(load_scenario(path.string()).agents.size(), 2u);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_EQ(code_of([&] { load_scenario(path.string()); }), ErrorCode::ParseError);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { load_scenario(path.string()); }), ErrorCode::IoError);
  EXPECT_EQ(load_scenario("scenario2").name, "scenario2");
}

TEST(Scenario, NeedRamp) {
  AgentConfig a;
  a.need_mhz = 30;
  a.need_ramp_mhz_per_tick = 5;
  EXPECT_EQ(a.need_at(0), 30);
  EXPECT_EQ(a.need_at(4), 50);
}
