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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "spectrum/ledger.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/money.hpp"

namespace spectrum::auction {

using ledger::AgentId;
using ledger::Tick;
using ledger::TokenId;

enum class Phase { Open, Closed, Revealing, Ended };

std::string_view to_string(Phase phase);

struct CommitEntry {
  std::string digest;
  std::uint64_t order = 0;  // global commit sequence; earlier wins ties
  Tick tick = 0;
};

struct RevealEntry {
  std::string salt;
  Cents value;
};

struct Outcome {
  std::optional<AgentId> winner;
  std::optional<Cents> clearing_price;
  std::optional<Cents> winning_bid;
  std::vector<Cents> losing_bids;      // valid reveals other than the winner's, highest first
  std::vector<AgentId> disqualified;   // winners that could not pay at settlement
  std::optional<std::uint64_t> trade_id;
  bool unsold = true;
};

nlohmann::json to_json(const Outcome& outcome);

struct Auction {
  std::string auction_id;
  TokenId token_id;
  Mechanism mechanism = Mechanism::DirectSale;
  AgentId seller;
  Cents reserve;
  Phase phase = Phase::Open;
  Tick opened_tick = 0;
  std::optional<Tick> closed_tick;
  std::map<AgentId, CommitEntry> commits;
  std::map<AgentId, RevealEntry> reveals;
  std::vector<std::string> rejected_reveals;  // "<bidder>: <reason>"
  std::optional<Outcome> outcome;
};

/// A verified sealed bid as seen by winner determination. `bidder` indexes
/// the caller's own table.
struct SealedBid {
  std::size_t bidder = 0;
  Cents value;
  std::uint64_t order = 0;
};

struct Resolution {
  std::optional<std::size_t> winner;  // index into the bids span
  Cents price;
};

/// Winner determination over valid reveals. Bids below the reserve do not
/// qualify. Highest value wins, earliest commit order breaks ties.
/// FirstPrice pays its own bid; SecondPrice pays the highest other qualifying
/// bid, or its own bid when no competitor qualifies.
Resolution resolve(std::span<const SealedBid> bids, Cents reserve, Mechanism mechanism);

/// How long each sealed-bid phase stays open, in ticks.
struct Schedule {
  Tick bidding_ticks = 1;
  Tick reveal_ticks = 1;
};

struct BoardEntry {
  std::string auction_id;
  TokenId token_id;
  Mechanism mechanism = Mechanism::DirectSale;
  AgentId seller;
  Cents reserve;
  Phase phase = Phase::Open;
  std::size_t commit_count = 0;
  Tick opened_tick = 0;
  std::int64_t capacity_mhz = 0;
};

nlohmann::json to_json(const BoardEntry& entry);

/// The sale contract. Holds per-token state machines for direct sale and
/// commit-reveal sealed-bid auctions; every transition is recorded on the
/// ledger it wraps.
class AuctionHouse {
 public:
  explicit AuctionHouse(ledger::Ledger& ledger, Schedule schedule = {});

  const Auction& create_listing(const TokenId& token, const AgentId& seller,
                                Mechanism mechanism, Cents reserve);

  Outcome buy_now(const std::string& auction_id, const AgentId& buyer);

  void commit_bid(const std::string& auction_id, const AgentId& bidder,
                  const std::string& digest);

  const Auction& close_bidding(const std::string& auction_id);

  void reveal_bid(const std::string& auction_id, const AgentId& bidder,
                  const std::string& salt, Cents value);

  Outcome finalize(const std::string& auction_id);

  /// Scheduler step run once per tick after agents act: finalizes auctions
  /// whose reveal window elapsed, closes bidding windows that elapsed, and
  /// ends unsold direct-sale listings. Returns the ids that reached Ended.
  std::vector<std::string> advance(Tick now);

  const Auction& auction(const std::string& auction_id) const;
  const std::vector<Auction>& auctions() const { return auctions_; }
  std::optional<std::string> active_listing(const TokenId& token) const;

  /// Open and revealing auctions. Never carries bid values.
  std::vector<BoardEntry> board() const;
  nlohmann::json board_json() const;

  const Schedule& schedule() const { return schedule_; }
  ledger::Ledger& ledger() { return ledger_; }
  const ledger::Ledger& ledger() const { return ledger_; }

 private:
  Auction& mutable_auction(const std::string& auction_id);
  std::string auction_value(const Auction& a) const;
  void end_auction(Auction& a, Outcome outcome, nlohmann::json payload);

  ledger::Ledger& ledger_;
  Schedule schedule_;
  std::vector<Auction> auctions_;
  std::map<std::string, std::size_t> index_;
  std::map<TokenId, std::string> listed_;
  std::uint64_t next_commit_order_ = 0;
};

std::string auction_key(const std::string& auction_id);
std::string commit_key(const std::string& auction_id, const AgentId& bidder);
std::string reveal_key(const std::string& auction_id, const AgentId& bidder);
/// Private-store key holding a bidder's plaintext commitment.
std::string bid_key(const std::string& auction_id, const AgentId& bidder);

}  // namespace spectrum::auction
