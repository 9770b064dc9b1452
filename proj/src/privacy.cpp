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

#include "spectrum/privacy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "spectrum/error.hpp"

namespace spectrum::privacy {
namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool contains_token(const std::string& text, const std::string& needle) {
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    const bool left = pos == 0 || !is_alnum(text[pos - 1]);
    const auto end = pos + needle.size();
    const bool right = end == text.size() || !is_alnum(text[end]);
    if (left && right) return true;
  }
  return false;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

// Returns the text to scan for this entry, or nullopt when it is exempt.
std::optional<std::string> scannable(const std::string& key, const std::string& value) {
  if (starts_with(key, "reveal:") || starts_with(key, "outcome:")) return std::nullopt;
  if (starts_with(key, "auction:")) {
    auto doc = nlohmann::json::parse(value, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return value;
    if (doc.value("phase", std::string()) != "Open") return std::nullopt;
    doc.erase("reserve");
    return doc.dump();
  }
  return value;
}

}  // namespace

Report verify_privacy(const std::vector<Snapshot>& snapshots) {
  Report report;
  for (const auto& snap : snapshots) {
    ++report.snapshots_scanned;
    for (const auto& bid : snap.in_flight) {
      ++report.values_checked;
      const std::string needle = std::to_string(bid.value.count());
      for (const auto& [key, value] : snap.world) {
        if (contains_token(key, needle)) {
          report.findings.push_back(Finding{snap.tick, key, bid.auction_id, bid.bidder, bid.value});
          continue;
        }
        const auto text = scannable(key, value);
        if (text && contains_token(*text, needle)) {
          report.findings.push_back(Finding{snap.tick, key, bid.auction_id, bid.bidder, bid.value});
        }
      }
    }
  }
  return report;
}

nlohmann::json to_json(const Snapshot& s) {
  auto bids = nlohmann::json::array();
  for (const auto& b : s.in_flight) {
    bids.push_back({{"auction_id", b.auction_id}, {"bidder", b.bidder}, {"value_cents", b.value.count()}});
  }
  return {{"tick", s.tick}, {"world_state", s.world}, {"in_flight", bids}};
}

Snapshot snapshot_from_json(const nlohmann::json& doc) {
  Snapshot s;
  try {
    s.tick = doc.at("tick").get<Tick>();
    s.world = doc.at("world_state").get<ledger::WorldState>();
    for (const auto& b : doc.at("in_flight")) {
      s.in_flight.push_back(InFlightBid{b.at("auction_id").get<std::string>(), b.at("bidder").get<std::string>(),
                                        Cents(b.at("value_cents").get<std::int64_t>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw MarketError(ErrorCode::ParseError, std::string("privacy snapshot: ") + e.what());
  }
  return s;
}

Report verify_privacy_dir(const std::filesystem::path& run_dir) {
  const auto path = run_dir / "privacy_snapshots.jsonl";
  std::ifstream in(path);
  if (!in) throw MarketError(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<Snapshot> snapshots;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded()) throw MarketError(ErrorCode::ParseError, "malformed line in " + path.string());
    snapshots.push_back(snapshot_from_json(doc));
  }
  return verify_privacy(snapshots);
}

nlohmann::json to_json(const Report& r) {
  auto findings = nlohmann::json::array();
  for (const auto& f : r.findings) {
    findings.push_back({{"tick", f.tick},
                        {"key", f.key},
                        {"auction_id", f.auction_id},
                        {"bidder", f.bidder},
                        {"value_cents", f.value.count()}});
  }
  return {{"snapshots_scanned", r.snapshots_scanned},
          {"values_checked", r.values_checked},
          {"findings", findings},
          {"clean", r.clean()}};
}

}  // namespace spectrum::privacy
