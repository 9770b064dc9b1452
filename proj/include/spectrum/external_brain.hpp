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

#include <chrono>
#include <string>

#include "json.hpp"
#include "spectrum/agents.hpp"

namespace spectrum::agents {

/// Request document sent to an external planner. Currency is in dollars.
nlohmann::json planning_request(const PlanningContext& context);

/// Parses a planner response. Throws MarketError(BrainFailure) when the
/// document violates the schema or omits a field its intent requires.
Intent parse_intent_response(const nlohmann::json& response, Mechanism mechanism);

/// Planner that POSTs each planning request as JSON to `endpoint`
/// (e.g. "http://127.0.0.1:8080/plan") and waits up to `timeout`.
class ExternalPlanner final : public Planner {
 public:
  explicit ExternalPlanner(std::string endpoint,
                           std::chrono::milliseconds timeout = std::chrono::seconds(10));

  Intent propose(const PlanningContext& context) override;
  std::string name() const override { return "external:" + endpoint_; }

 private:
  std::string endpoint_;
  std::string host_;  // scheme://host[:port]
  std::string path_;
  std::chrono::milliseconds timeout_;
};

/// One external planning round: request, parse, then the validation and
/// fallback rules of plan().
PlanResult plan_external(const PlanningContext& context, const std::string& endpoint,
                         std::chrono::milliseconds timeout = std::chrono::seconds(10));

}  // namespace spectrum::agents
