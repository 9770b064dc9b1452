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

#include "spectrum/ledger.hpp"

#include <algorithm>
#include <array>

#include "spectrum/digest.hpp"
#include "spectrum/error.hpp"

namespace spectrum {

namespace ledger {
namespace {

constexpr std::array<TxKind, 9> kAllKinds = {
    TxKind::Mint,   TxKind::List,   TxKind::BuyNow,   TxKind::Commit,      TxKind::Close,
    TxKind::Reveal, TxKind::Finalize, TxKind::Settle, TxKind::PrivateWrite};

std::string token_value(const SpectrumToken& t) {
  nlohmann::json doc = {
      {"owner", t.owner},
      {"center_freq_mhz", t.center_freq_mhz},
      {"bandwidth_mhz", t.bandwidth_mhz},
      {"capacity_mhz", t.capacity_mhz},
      {"slot_duration", t.slot_duration},
      {"location", t.location},
      {"minted_tick", t.minted_tick},
  };
  return doc.dump();
}

}  // namespace

std::string_view to_string(TxKind kind) {
  switch (kind) {
    case TxKind::Mint: return "Mint";
    case TxKind::List: return "List";
    case TxKind::BuyNow: return "BuyNow";
    case TxKind::Commit: return "Commit";
    case TxKind::Close: return "Close";
    case TxKind::Reveal: return "Reveal";
    case TxKind::Finalize: return "Finalize";
    case TxKind::Settle: return "Settle";
    case TxKind::PrivateWrite: return "PrivateWrite";
  }
  return "Mint";
}

std::optional<TxKind> parse_tx_kind(std::string_view text) {
  for (TxKind kind : kAllKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string account_key(const AgentId& agent) { return "account:" + agent; }
std::string token_key(const TokenId& token) { return "token:" + token; }

nlohmann::json to_json(const Transaction& tx) {
  return nlohmann::json{
      {"tx_id", tx.tx_id},
      {"tick", tx.tick},
      {"sequence", tx.sequence},
      {"submitter", tx.submitter},
      {"kind", std::string(to_string(tx.kind))},
      {"payload", tx.payload.is_null() ? nlohmann::json::object() : tx.payload},
      {"world_writes", tx.world_writes},
      {"private_writes", tx.private_writes},
  };
}

Transaction transaction_from_json(const nlohmann::json& doc) {
  Transaction tx;
  try {
    tx.tx_id = doc.at("tx_id").get<std::uint64_t>();
    tx.tick = doc.at("tick").get<Tick>();
    tx.sequence = doc.at("sequence").get<std::uint64_t>();
    tx.submitter = doc.at("submitter").get<std::string>();
    auto kind = parse_tx_kind(doc.at("kind").get<std::string>());
    if (!kind) throw MarketError(ErrorCode::ParseError, "unknown transaction kind");
    tx.kind = *kind;
    tx.payload = doc.at("payload");
    tx.world_writes = doc.at("world_writes").get<WorldState>();
    tx.private_writes = doc.at("private_writes").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw MarketError(ErrorCode::ParseError, e.what());
  }
  return tx;
}

Ledger::Ledger(LedgerOptions options) : options_(options) {}

const Transaction& Ledger::commit(Transaction tx) {
  tx.tx_id = log_.size();
  tx.tick = tick_;
  tx.sequence = next_sequence_++;
  for (const auto& [key, value] : tx.world_writes) world_[key] = value;
  log_.push_back(std::move(tx));
  return log_.back();
}

const Transaction& Ledger::append(const AgentId& submitter, TxKind kind,
                                  nlohmann::json payload, WorldState world_writes) {
  Transaction tx;
  tx.submitter = submitter;
  tx.kind = kind;
  tx.payload = std::move(payload);
  tx.world_writes = std::move(world_writes);
  return commit(std::move(tx));
}

void Ledger::require_agent(const AgentId& agent) const {
  if (!accounts_.count(agent)) throw MarketError(ErrorCode::UnknownAgent, agent);
}

void Ledger::open_account(const AgentId& agent, const std::string& org, Cents balance) {
  if (agent.empty()) throw MarketError(ErrorCode::InvalidInput, "empty agent id");
  if (accounts_.count(agent)) throw MarketError(ErrorCode::DuplicateAgent, agent);
  if (balance < Cents(0)) throw MarketError(ErrorCode::InvalidInput, "negative opening balance");
  accounts_[agent] = Account{agent, org, balance};
  agent_order_.push_back(agent);
  append(agent, TxKind::Mint,
         {{"account", agent}, {"org", org}, {"balance", balance.count()}},
         {{account_key(agent), std::to_string(balance.count())}});
}

SpectrumToken Ledger::mint_token(const TokenSpec& spec, const AgentId& owner) {
  if (spec.token_id.empty()) throw MarketError(ErrorCode::InvalidInput, "empty token id");
  if (tokens_.count(spec.token_id)) throw MarketError(ErrorCode::DuplicateToken, spec.token_id);
  require_agent(owner);
  if (spec.bandwidth_mhz <= 0) throw MarketError(ErrorCode::InvalidInput, "bandwidth must be positive");
  if (spec.slot_duration < 1) throw MarketError(ErrorCode::InvalidInput, "slot_duration must be >= 1");

  SpectrumToken token{spec.token_id, spec.center_freq_mhz, spec.bandwidth_mhz,
                      spec.slot_duration, spec.location, spec.bandwidth_mhz, owner, tick_};
  tokens_[token.token_id] = token;
  token_order_.push_back(token.token_id);
  append(owner, TxKind::Mint, {{"token", token.token_id}, {"owner", owner}},
         {{token_key(token.token_id), token_value(token)}});
  return token;
}

TradeRecord Ledger::apply_settlement(const TokenId& token_id, const AgentId& buyer,
                                     const AgentId& seller, Cents price,
                                     Mechanism mechanism, const std::string& auction_id) {
  auto it = tokens_.find(token_id);
  if (it == tokens_.end()) throw MarketError(ErrorCode::UnknownToken, token_id);
  require_agent(buyer);
  require_agent(seller);
  if (price < Cents(0)) throw MarketError(ErrorCode::InvalidInput, "negative price");
  if (buyer == seller) throw MarketError(ErrorCode::SelfDealing, buyer);
  SpectrumToken& token = it->second;
  if (token.owner != seller) {
    throw MarketError(ErrorCode::NotOwner,
                      seller + " does not own " + token_id + " (possible double spend)");
  }
  if (is_expired(token_id)) throw MarketError(ErrorCode::TokenExpired, token_id);
  Account& from = accounts_.at(buyer);
  Account& to = accounts_.at(seller);
  if (from.balance < price) {
    throw MarketError(ErrorCode::InsufficientFunds,
                      buyer + " balance " + format_dollars(from.balance) + " < " +
                          format_dollars(price));
  }

  from.balance -= price;
  to.balance += price;
  token.owner = buyer;

  TradeRecord trade{trades_.size(), token_id, buyer, seller, price, tick_,
                    mechanism, auction_id, token.capacity_mhz};
  trades_.push_back(trade);
  append(seller, TxKind::Settle,
         {{"trade_id", trade.trade_id},
          {"token", token_id},
          {"buyer", buyer},
          {"seller", seller},
          {"price", price.count()},
          {"mechanism", std::string(to_string(mechanism))},
          {"auction", auction_id}},
         {{account_key(buyer), std::to_string(from.balance.count())},
          {account_key(seller), std::to_string(to.balance.count())},
          {token_key(token_id), token_value(token)}});
  return trade;
}

void Ledger::put_private(const Caller& caller, const std::string& org,
                         const std::string& key, const std::string& value) {
  if (!caller.auctioneer && caller.org != org) {
    throw MarketError(ErrorCode::AccessDenied, caller.org + " cannot write to " + org);
  }
  const std::string digest = sha256_hex(value);
  private_[org][key] = value;

  Transaction tx;
  tx.submitter = caller.auctioneer ? std::string("auctioneer") : caller.org;
  tx.kind = TxKind::PrivateWrite;
  tx.payload = {{"org", org}, {"key", key}};
  tx.world_writes[key] = options_.leak_private_values ? value : digest;
  tx.private_writes[org + "/" + key] = digest;
  commit(std::move(tx));
}

std::string Ledger::get_private(const Caller& caller, const std::string& org,
                                const std::string& key) const {
  if (!caller.auctioneer && caller.org != org) {
    throw MarketError(ErrorCode::AccessDenied, caller.org + " cannot read " + org);
  }
  auto collection = private_.find(org);
  if (collection != private_.end()) {
    auto it = collection->second.find(key);
    if (it != collection->second.end()) return it->second;
  }
  throw MarketError(ErrorCode::InvalidInput, "no private value " + org + "/" + key);
}

Tick Ledger::advance_tick() {
  const Tick finished = tick_;
  for (const auto& hook : hooks_) hook(finished);
  ++tick_;
  next_sequence_ = 0;
  return tick_;
}

void Ledger::on_tick(TickHook hook) { hooks_.push_back(std::move(hook)); }

std::vector<Transaction> Ledger::history(const TxFilter& filter) const {
  std::vector<Transaction> out;
  for (const auto& tx : log_) {
    if (filter.kind && tx.kind != *filter.kind) continue;
    if (filter.submitter && tx.submitter != *filter.submitter) continue;
    if (filter.from_tick && tx.tick < *filter.from_tick) continue;
    if (filter.to_tick && tx.tick > *filter.to_tick) continue;
    out.push_back(tx);
  }
  return out;
}

WorldState Ledger::world_state_at(Tick tick) const {
  WorldState state;
  for (const auto& tx : log_) {
    if (tx.tick > tick) break;
    for (const auto& [key, value] : tx.world_writes) state[key] = value;
  }
  return state;
}

std::string Ledger::dump_world_state() const { return nlohmann::json(world_).dump(); }

bool Ledger::has_agent(const AgentId& agent) const { return accounts_.count(agent) > 0; }

const Account& Ledger::account(const AgentId& agent) const {
  auto it = accounts_.find(agent);
  if (it == accounts_.end()) throw MarketError(ErrorCode::UnknownAgent, agent);
  return it->second;
}

Cents Ledger::balance(const AgentId& agent) const { return account(agent).balance; }

std::vector<AgentId> Ledger::agents() const { return agent_order_; }

Cents Ledger::total_balance() const {
  Cents total;
  for (const auto& [id, acct] : accounts_) total += acct.balance;
  return total;
}

bool Ledger::has_token(const TokenId& token) const { return tokens_.count(token) > 0; }

const SpectrumToken& Ledger::token(const TokenId& token) const {
  auto it = tokens_.find(token);
  if (it == tokens_.end()) throw MarketError(ErrorCode::UnknownToken, token);
  return it->second;
}

AgentId Ledger::owner_at(const TokenId& token_id, Tick tick) const {
  const std::string key = token_key(token_id);
  std::optional<AgentId> owner;
  for (const auto& tx : log_) {
    if (tx.tick > tick) break;
    auto it = tx.world_writes.find(key);
    if (it != tx.world_writes.end()) {
      owner = nlohmann::json::parse(it->second).at("owner").get<AgentId>();
    }
  }
  if (!owner) throw MarketError(ErrorCode::UnknownToken, token_id + " at tick " + std::to_string(tick));
  return *owner;
}

std::vector<TokenId> Ledger::holdings(const AgentId& agent) const {
  std::vector<TokenId> out;
  for (const auto& id : token_order_) {
    if (tokens_.at(id).owner == agent) out.push_back(id);
  }
  return out;
}

std::int64_t Ledger::held_capacity(const AgentId& agent) const {
  std::int64_t total = 0;
  for (const auto& id : token_order_) {
    const auto& t = tokens_.at(id);
    if (t.owner == agent && !is_expired(id)) total += t.capacity_mhz;
  }
  return total;
}

std::int64_t Ledger::total_capacity() const {
  std::int64_t total = 0;
  for (const auto& [id, t] : tokens_) total += t.capacity_mhz;
  return total;
}

bool Ledger::is_expired(const TokenId& token_id) const {
  if (!options_.expire_tokens) return false;
  const auto& t = token(token_id);
  return tick_ >= t.minted_tick + t.slot_duration;
}

WorldState Ledger::replay(const std::vector<Transaction>& log) {
  WorldState state;
  for (const auto& tx : log) {
    for (const auto& [key, value] : tx.world_writes) state[key] = value;
  }
  return state;
}

}  // namespace ledger
}  // namespace spectrum
