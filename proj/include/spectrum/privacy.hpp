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

#include "json.hpp"
#include "spectrum/ledger.hpp"
#include "spectrum/money.hpp"

namespace spectrum::privacy {

using ledger::Tick;

/// A sealed bid that was committed but not yet revealed when the snapshot
/// was taken. Read from the private store with the auctioneer role.
struct InFlightBid {
  std::string auction_id;
  std::string bidder;
  Cents value;
};

/// Public world state captured while at least one auction was taking commits.
struct Snapshot {
  Tick tick = 0;
  ledger::WorldState world;
  std::vector<InFlightBid> in_flight;
};

struct Finding {
  Tick tick = 0;
  std::string key;
  std::string auction_id;
  std::string bidder;
  Cents value;
};

struct Report {
  std::size_t snapshots_scanned = 0;
  std::size_t values_checked = 0;
  std::vector<Finding> findings;

  bool clean() const { return findings.empty(); }
};

/// Looks for each in-flight value, rendered as a decimal cent count, as a
/// standalone token (bounded by non-alphanumerics) anywhere in the public
/// state. Entries that are legitimately public once bidding has closed
/// (reveals, outcomes, auctions past their bidding window) and listing
/// reserves are not scanned.
Report verify_privacy(const std::vector<Snapshot>& snapshots);

/// Same scan over a run directory written by the report stage.
Report verify_privacy_dir(const std::filesystem::path& run_dir);

nlohmann::json to_json(const Report& report);
nlohmann::json to_json(const Snapshot& snapshot);
Snapshot snapshot_from_json(const nlohmann::json& doc);

}  // namespace spectrum::privacy
