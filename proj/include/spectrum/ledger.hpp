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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/money.hpp"

namespace spectrum::ledger {

using AgentId = std::string;
using TokenId = std::string;
using Tick = std::int64_t;

/// Key/value view visible to every participant. Ordered so that dumps are
/// byte-stable.
using WorldState = std::map<std::string, std::string>;

struct TokenSpec {
  TokenId token_id;
  double center_freq_mhz = 0.0;
  std::int64_t bandwidth_mhz = 0;
  std::int64_t slot_duration = 1;  // ticks
  std::string location;
};

/// A tradable, time-limited spectrum right with exactly one owner.
struct SpectrumToken {
  TokenId token_id;
  double center_freq_mhz = 0.0;
  std::int64_t bandwidth_mhz = 0;
  std::int64_t slot_duration = 1;
  std::string location;
  std::int64_t capacity_mhz = 0;  // equals bandwidth_mhz
  AgentId owner;
  Tick minted_tick = 0;
};

struct Account {
  AgentId agent_id;
  std::string org;
  Cents balance;
};

enum class TxKind {
  Mint,
  List,
  BuyNow,
  Commit,
  Close,
  Reveal,
  Finalize,
  Settle,
  PrivateWrite,
};

std::string_view to_string(TxKind kind);
std::optional<TxKind> parse_tx_kind(std::string_view text);

struct Transaction {
  std::uint64_t tx_id = 0;
  Tick tick = 0;
  std::uint64_t sequence = 0;  // position within the tick
  AgentId submitter;
  TxKind kind = TxKind::Mint;
  nlohmann::json payload;
  WorldState world_writes;
  // "<org>/<key>" -> sha256 of the private value. Plaintext never enters the
  // transaction log.
  std::map<std::string, std::string> private_writes;
};

nlohmann::json to_json(const Transaction& tx);
Transaction transaction_from_json(const nlohmann::json& doc);

struct TradeRecord {
  std::uint64_t trade_id = 0;
  TokenId token_id;
  AgentId buyer;
  AgentId seller;
  Cents price;
  Tick tick = 0;
  Mechanism mechanism = Mechanism::DirectSale;
  std::string auction_id;
  std::int64_t capacity_mhz = 0;
};

/// Who is asking. Private data is readable by its owning organisation and by
/// the auctioneer role only.
struct Caller {
  std::string org;
  bool auctioneer = false;

  static Caller organization(std::string name) { return Caller{std::move(name), false}; }
  static Caller auctioneer_role() { return Caller{"", true}; }
};

struct TxFilter {
  std::optional<TxKind> kind;
  std::optional<AgentId> submitter;
  std::optional<Tick> from_tick;
  std::optional<Tick> to_tick;  // inclusive
};

struct LedgerOptions {
  // Tokens stop being tradable once minted_tick + slot_duration is reached.
  bool expire_tokens = false;
  // Fault injection for exercising the privacy scan: private values are
  // written to the world state verbatim instead of as digests.
  bool leak_private_values = false;
};

/// In-process permissioned ledger: an append-only transaction log with
/// tick-based finality, a public world state derived purely from the log's
/// world writes, per-organisation private stores, token ownership and
/// currency accounts.
///
/// Single writer. Every mutation is validated before anything is written, so
/// a throwing call leaves both the log and the derived state unchanged.
class Ledger {
 public:
  using TickHook = std::function<void(Tick finished_tick)>;

  explicit Ledger(LedgerOptions options = {});

  void open_account(const AgentId& agent, const std::string& org, Cents balance);

  SpectrumToken mint_token(const TokenSpec& spec, const AgentId& owner);

  /// Atomically moves the token to the buyer and the price to the seller.
  TradeRecord apply_settlement(const TokenId& token, const AgentId& buyer,
                               const AgentId& seller, Cents price,
                               Mechanism mechanism = Mechanism::DirectSale,
                               const std::string& auction_id = {});

  void put_private(const Caller& caller, const std::string& org,
                   const std::string& key, const std::string& value);
  std::string get_private(const Caller& caller, const std::string& org,
                          const std::string& key) const;

  /// Generic append used by the auction contract. World writes are applied
  /// in the same step.
  const Transaction& append(const AgentId& submitter, TxKind kind,
                            nlohmann::json payload, WorldState world_writes);

  /// Closes the current tick, runs tick hooks, and returns the new tick.
  Tick advance_tick();
  Tick tick() const { return tick_; }
  void on_tick(TickHook hook);

  std::vector<Transaction> history(const TxFilter& filter = {}) const;
  const std::vector<Transaction>& log() const { return log_; }

  const WorldState& world_state() const { return world_; }
  /// World state as of the end of the given tick.
  WorldState world_state_at(Tick tick) const;
  /// Sorted key/value JSON object.
  std::string dump_world_state() const;

  bool has_agent(const AgentId& agent) const;
  const Account& account(const AgentId& agent) const;
  Cents balance(const AgentId& agent) const;
  std::vector<AgentId> agents() const;  // registration order
  Cents total_balance() const;

  bool has_token(const TokenId& token) const;
  const SpectrumToken& token(const TokenId& token) const;
  const std::vector<TokenId>& token_ids() const { return token_order_; }
  AgentId owner_at(const TokenId& token, Tick tick) const;
  std::vector<TokenId> holdings(const AgentId& agent) const;
  std::int64_t held_capacity(const AgentId& agent) const;
  std::int64_t total_capacity() const;
  bool is_expired(const TokenId& token) const;

  const std::vector<TradeRecord>& trades() const { return trades_; }

  const LedgerOptions& options() const { return options_; }

  /// Folds the world writes of a recorded log.
  static WorldState replay(const std::vector<Transaction>& log);

 private:
  const Transaction& commit(Transaction tx);
  void require_agent(const AgentId& agent) const;

  LedgerOptions options_;
  Tick tick_ = 0;
  std::uint64_t next_sequence_ = 0;
  std::vector<Transaction> log_;
  WorldState world_;
  std::map<std::string, std::map<std::string, std::string>> private_;  // org -> key -> value
  std::map<AgentId, Account> accounts_;
  std::vector<AgentId> agent_order_;
  std::map<TokenId, SpectrumToken> tokens_;
  std::vector<TokenId> token_order_;
  std::vector<TradeRecord> trades_;
  std::vector<TickHook> hooks_;
};

std::string account_key(const AgentId& agent);
std::string token_key(const TokenId& token);

}  // namespace spectrum::ledger
