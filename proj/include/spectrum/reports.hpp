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

#include <filesystem>
#include <string>
#include <vector>

#include "spectrum/simulator.hpp"

namespace spectrum::sim {

/// scenario,mechanism,seed followed by the metric columns
/// trades,avg_price_per_mhz,surplus,shapley,efficiency,gini,hhi.
/// avg_price_per_mhz weights every traded MHz equally.
std::string summary_header();
std::string summary_row(const Summary& summary);

/// Writes every artifact of one run into out_dir (created if needed) and
/// returns the paths written. Throws MarketError(IoError).
std::vector<std::filesystem::path> emit_reports(const RunArtifacts& artifacts,
                                                const std::filesystem::path& out_dir);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single run
};

struct AggregateRow {
  std::string scenario;
  Mechanism mechanism = Mechanism::SecondPrice;
  std::size_t runs = 0;
  MetricStats trades, avg_price_per_mhz, surplus, shapley, efficiency, gini, hhi;
};

/// Groups by (scenario, mechanism) in first-seen order.
std::vector<AggregateRow> aggregate(const std::vector<Summary>& summaries);

/// summary.csv with one row per run and, for more than one run per group,
/// aggregate.csv with mean and stddev per metric.
std::vector<std::filesystem::path> emit_batch_summary(const std::vector<Summary>& summaries,
                                                      const std::filesystem::path& out_dir);

}  // namespace spectrum::sim
