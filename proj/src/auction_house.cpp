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

#include "spectrum/auction_house.hpp"

#include <algorithm>
#include <cctype>

#include "spectrum/digest.hpp"
#include "spectrum/error.hpp"

namespace spectrum::auction {
namespace {

bool is_hex_digest(const std::string& digest) {
  return digest.size() == 64 && std::all_of(digest.begin(), digest.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'f');
         });
}

// true if a outranks b
bool outranks(const SealedBid& a, const SealedBid& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.order < b.order;
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Open: return "Open";
    case Phase::Closed: return "Closed";
    case Phase::Revealing: return "Revealing";
    case Phase::Ended: return "Ended";
  }
  return "Open";
}

std::string auction_key(const std::string& auction_id) { return "auction:" + auction_id; }
std::string commit_key(const std::string& id, const AgentId& bidder) {
  return "commit:" + id + ":" + bidder;
}
std::string reveal_key(const std::string& id, const AgentId& bidder) {
  return "reveal:" + id + ":" + bidder;
}
std::string bid_key(const std::string& id, const AgentId& bidder) {
  return "bid:" + id + ":" + bidder;
}

nlohmann::json to_json(const Outcome& o) {
  nlohmann::json doc = {{"unsold", o.unsold}};
  doc["winner"] = o.winner ? nlohmann::json(*o.winner) : nlohmann::json(nullptr);
  doc["clearing_price"] =
      o.clearing_price ? nlohmann::json(o.clearing_price->count()) : nlohmann::json(nullptr);
  doc["winning_bid"] =
      o.winning_bid ? nlohmann::json(o.winning_bid->count()) : nlohmann::json(nullptr);
  auto losing = nlohmann::json::array();
  for (Cents c : o.losing_bids) losing.push_back(c.count());
  doc["losing_bids"] = losing;
  doc["disqualified"] = o.disqualified;
  doc["trade_id"] = o.trade_id ? nlohmann::json(*o.trade_id) : nlohmann::json(nullptr);
  return doc;
}

nlohmann::json to_json(const BoardEntry& e) {
  return nlohmann::json{
      {"auction_id", e.auction_id},
      {"token", e.token_id},
      {"mechanism", std::string(spectrum::to_string(e.mechanism))},
      {"seller", e.seller},
      {"reserve", e.reserve.count()},
      {"phase", std::string(to_string(e.phase))},
      {"commit_count", e.commit_count},
      {"opened_tick", e.opened_tick},
      {"capacity_mhz", e.capacity_mhz},
  };
}

Resolution resolve(std::span<const SealedBid> bids, Cents reserve, Mechanism mechanism) {
  if (!is_sealed_bid(mechanism)) {
    throw MarketError(ErrorCode::WrongMechanism, "direct sale has no bid resolution");
  }
  const SealedBid* best = nullptr;
  const SealedBid* runner_up = nullptr;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const SealedBid& bid = bids[i];
    if (bid.value < reserve) continue;
    if (best == nullptr || outranks(bid, *best)) {
      runner_up = best;
      best = &bid;
      best_index = i;
    } else if (runner_up == nullptr || outranks(bid, *runner_up)) {
      runner_up = &bid;
    }
  }
  Resolution out;
  if (best == nullptr) return out;
  out.winner = best_index;
  if (mechanism == Mechanism::FirstPrice || runner_up == nullptr) {
    out.price = best->value;
  } else {
    out.price = runner_up->value;
  }
  return out;
}

AuctionHouse::AuctionHouse(ledger::Ledger& ledger, Schedule schedule)
    : ledger_(ledger), schedule_(schedule) {
  if (schedule_.bidding_ticks < 1 || schedule_.reveal_ticks < 1) {
    throw MarketError(ErrorCode::InvalidInput, "phase windows must be at least one tick");
  }
}

Auction& AuctionHouse::mutable_auction(const std::string& auction_id) {
  auto it = index_.find(auction_id);
  if (it == index_.end()) throw MarketError(ErrorCode::UnknownAuction, auction_id);
  return auctions_[it->second];
}

const Auction& AuctionHouse::auction(const std::string& auction_id) const {
  auto it = index_.find(auction_id);
  if (it == index_.end()) throw MarketError(ErrorCode::UnknownAuction, auction_id);
  return auctions_[it->second];
}

std::optional<std::string> AuctionHouse::active_listing(const TokenId& token) const {
  auto it = listed_.find(token);
  if (it == listed_.end()) return std::nullopt;
  return it->second;
}

std::string AuctionHouse::auction_value(const Auction& a) const {
  nlohmann::json doc = {
      {"token", a.token_id},
      {"mechanism", std::string(spectrum::to_string(a.mechanism))},
      {"seller", a.seller},
      {"reserve", a.reserve.count()},
      {"phase", std::string(to_string(a.phase))},
      {"commits", a.commits.size()},
      {"opened_tick", a.opened_tick},
  };
  if (a.outcome) {
    doc["winner"] = a.outcome->winner ? nlohmann::json(*a.outcome->winner) : nlohmann::json(nullptr);
    doc["clearing_price"] = a.outcome->clearing_price
                                ? nlohmann::json(a.outcome->clearing_price->count())
                                : nlohmann::json(nullptr);
  }
  return doc.dump();
}

const Auction& AuctionHouse::create_listing(const TokenId& token, const AgentId& seller,
                                            Mechanism mechanism, Cents reserve) {
  const auto& t = ledger_.token(token);
  if (!ledger_.has_agent(seller)) throw MarketError(ErrorCode::UnknownAgent, seller);
  if (t.owner != seller) throw MarketError(ErrorCode::NotOwner, seller + " does not own " + token);
  if (listed_.count(token)) throw MarketError(ErrorCode::AlreadyListed, token);
  if (ledger_.is_expired(token)) throw MarketError(ErrorCode::TokenExpired, token);
  if (reserve < Cents(0)) throw MarketError(ErrorCode::InvalidInput, "negative reserve");

  Auction a;
  a.auction_id = "auction-" + std::to_string(auctions_.size() + 1);
  a.token_id = token;
  a.mechanism = mechanism;
  a.seller = seller;
  a.reserve = reserve;
  a.opened_tick = ledger_.tick();
  index_[a.auction_id] = auctions_.size();
  listed_[token] = a.auction_id;
  auctions_.push_back(a);

  ledger_.append(seller, ledger::TxKind::List,
                 {{"auction", a.auction_id},
                  {"token", token},
                  {"mechanism", std::string(spectrum::to_string(mechanism))},
                  {"reserve", reserve.count()}},
                 {{auction_key(a.auction_id), auction_value(a)}, {"listing:" + token, a.auction_id}});
  return auctions_.back();
}

void AuctionHouse::end_auction(Auction& a, Outcome outcome, nlohmann::json payload) {
  a.phase = Phase::Ended;
  a.outcome = std::move(outcome);
  listed_.erase(a.token_id);
  payload["auction"] = a.auction_id;
  payload["outcome"] = to_json(*a.outcome);
  ledger_.append(a.seller, ledger::TxKind::Finalize, std::move(payload),
                 {{auction_key(a.auction_id), auction_value(a)},
                  {"outcome:" + a.auction_id, to_json(*a.outcome).dump()},
                  {"listing:" + a.token_id, ""}});
}

Outcome AuctionHouse::buy_now(const std::string& auction_id, const AgentId& buyer) {
  Auction& a = mutable_auction(auction_id);
  if (a.mechanism != Mechanism::DirectSale) {
    throw MarketError(ErrorCode::WrongMechanism, auction_id + " is a sealed-bid auction");
  }
  if (a.phase == Phase::Ended) throw MarketError(ErrorCode::AuctionEnded, auction_id);
  if (a.phase != Phase::Open) throw MarketError(ErrorCode::PhaseViolation, auction_id);
  if (!ledger_.has_agent(buyer)) throw MarketError(ErrorCode::UnknownAgent, buyer);
  if (buyer == a.seller) throw MarketError(ErrorCode::SelfDealing, buyer);
  if (ledger_.balance(buyer) < a.reserve) {
    throw MarketError(ErrorCode::InsufficientFunds,
                      buyer + " cannot pay " + format_dollars(a.reserve));
  }
  if (ledger_.token(a.token_id).owner != a.seller) {
    throw MarketError(ErrorCode::NotOwner, a.seller + " no longer owns " + a.token_id);
  }
  if (ledger_.is_expired(a.token_id)) throw MarketError(ErrorCode::TokenExpired, a.token_id);

  ledger_.append(buyer, ledger::TxKind::BuyNow,
                 {{"auction", auction_id}, {"buyer", buyer}, {"price", a.reserve.count()}}, {});
  const auto trade = ledger_.apply_settlement(a.token_id, buyer, a.seller, a.reserve,
                                              a.mechanism, auction_id);
  Outcome outcome;
  outcome.winner = buyer;
  outcome.clearing_price = a.reserve;
  outcome.winning_bid = a.reserve;
  outcome.trade_id = trade.trade_id;
  outcome.unsold = false;
  end_auction(a, outcome, {{"reason", "buy-now"}});
  return outcome;
}

void AuctionHouse::commit_bid(const std::string& auction_id, const AgentId& bidder,
                              const std::string& digest) {
  Auction& a = mutable_auction(auction_id);
  if (!is_sealed_bid(a.mechanism)) {
    throw MarketError(ErrorCode::WrongMechanism, auction_id + " is a direct sale");
  }
  if (a.phase != Phase::Open) {
    throw MarketError(ErrorCode::PhaseViolation,
                      auction_id + " is " + std::string(to_string(a.phase)));
  }
  if (!ledger_.has_agent(bidder)) throw MarketError(ErrorCode::UnknownAgent, bidder);
  if (bidder == a.seller) throw MarketError(ErrorCode::SelfDealing, bidder + " bids on own sale");
  if (!is_hex_digest(digest)) throw MarketError(ErrorCode::InvalidInput, "malformed digest");

  a.commits[bidder] = CommitEntry{digest, next_commit_order_++, ledger_.tick()};
  ledger_.append(bidder, ledger::TxKind::Commit, {{"auction", auction_id}, {"digest", digest}},
                 {{commit_key(auction_id, bidder), digest},
                  {auction_key(auction_id), auction_value(a)}});
}

const Auction& AuctionHouse::close_bidding(const std::string& auction_id) {
  Auction& a = mutable_auction(auction_id);
  if (!is_sealed_bid(a.mechanism)) {
    throw MarketError(ErrorCode::WrongMechanism, auction_id + " is a direct sale");
  }
  if (a.phase != Phase::Open) {
    throw MarketError(ErrorCode::PhaseViolation,
                      auction_id + " is " + std::string(to_string(a.phase)));
  }
  a.phase = Phase::Closed;
  a.closed_tick = ledger_.tick();
  // Closed is transient: bidding stops and the reveal window opens at once.
  a.phase = Phase::Revealing;
  ledger_.append(a.seller, ledger::TxKind::Close,
                 {{"auction", auction_id}, {"commits", a.commits.size()}},
                 {{auction_key(auction_id), auction_value(a)}});
  return a;
}

void AuctionHouse::reveal_bid(const std::string& auction_id, const AgentId& bidder,
                              const std::string& salt, Cents value) {
  Auction& a = mutable_auction(auction_id);
  if (a.phase != Phase::Revealing) {
    throw MarketError(ErrorCode::PhaseViolation,
                      auction_id + " is " + std::string(to_string(a.phase)));
  }
  auto commit = a.commits.find(bidder);
  if (commit == a.commits.end()) throw MarketError(ErrorCode::NoCommit, bidder);
  if (a.reveals.count(bidder)) {
    throw MarketError(ErrorCode::PhaseViolation, bidder + " already revealed");
  }
  if (commit_digest(salt, value) != commit->second.digest) {
    a.rejected_reveals.push_back(bidder + ": digest mismatch");
    throw MarketError(ErrorCode::DigestMismatch, bidder + " on " + auction_id);
  }
  a.reveals[bidder] = RevealEntry{salt, value};
  ledger_.append(bidder, ledger::TxKind::Reveal,
                 {{"auction", auction_id}, {"salt", salt}, {"value", value.count()}},
                 {{reveal_key(auction_id, bidder), commit_preimage(salt, value)}});
}

Outcome AuctionHouse::finalize(const std::string& auction_id) {
  Auction& a = mutable_auction(auction_id);
  if (a.phase != Phase::Revealing) {
    throw MarketError(ErrorCode::PhaseViolation,
                      auction_id + " is " + std::string(to_string(a.phase)));
  }

  std::vector<AgentId> names;
  std::vector<SealedBid> bids;
  for (const auto& [bidder, reveal] : a.reveals) {
    bids.push_back(SealedBid{names.size(), reveal.value, a.commits.at(bidder).order});
    names.push_back(bidder);
  }

  Outcome outcome;
  Resolution resolution = resolve(bids, a.reserve, a.mechanism);
  // A winner that cannot cover the clearing price forfeits and the rule is
  // re-applied without its bid.
  while (resolution.winner &&
         ledger_.balance(names[bids[*resolution.winner].bidder]) < resolution.price) {
    outcome.disqualified.push_back(names[bids[*resolution.winner].bidder]);
    bids.erase(bids.begin() + static_cast<std::ptrdiff_t>(*resolution.winner));
    resolution = resolve(bids, a.reserve, a.mechanism);
  }

  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (resolution.winner && i == *resolution.winner) continue;
    if (bids[i].value >= a.reserve) outcome.losing_bids.push_back(bids[i].value);
  }
  std::sort(outcome.losing_bids.begin(), outcome.losing_bids.end(), std::greater<>());

  if (resolution.winner && !ledger_.is_expired(a.token_id)) {
    const AgentId& winner = names[bids[*resolution.winner].bidder];
    outcome.winner = winner;
    outcome.winning_bid = bids[*resolution.winner].value;
    outcome.clearing_price = resolution.price;
    outcome.unsold = false;
    const auto trade = ledger_.apply_settlement(a.token_id, winner, a.seller, resolution.price,
                                                a.mechanism, auction_id);
    outcome.trade_id = trade.trade_id;
  }
  end_auction(a, outcome, {{"reason", "finalized"}, {"reveals", a.reveals.size()}});
  return outcome;
}

std::vector<std::string> AuctionHouse::advance(Tick now) {
  std::vector<std::string> ended;
  for (std::size_t i = 0; i < auctions_.size(); ++i) {
    Auction& a = auctions_[i];
    if (a.phase == Phase::Revealing && *a.closed_tick + schedule_.reveal_ticks <= now) {
      finalize(a.auction_id);
      ended.push_back(a.auction_id);
    } else if (a.phase == Phase::Open && a.opened_tick + schedule_.bidding_ticks <= now) {
      if (a.mechanism == Mechanism::DirectSale) {
        end_auction(a, Outcome{}, {{"reason", "expired"}});
        ended.push_back(a.auction_id);
      } else {
        close_bidding(a.auction_id);
      }
    }
  }
  return ended;
}

std::vector<BoardEntry> AuctionHouse::board() const {
  std::vector<BoardEntry> out;
  for (const auto& a : auctions_) {
    if (a.phase == Phase::Ended) continue;
    out.push_back(BoardEntry{a.auction_id, a.token_id, a.mechanism, a.seller, a.reserve, a.phase,
                             a.commits.size(), a.opened_tick,
                             ledger_.token(a.token_id).capacity_mhz});
  }
  return out;
}

nlohmann::json AuctionHouse::board_json() const {
  auto doc = nlohmann::json::array();
  for (const auto& entry : board()) doc.push_back(to_json(entry));
  return doc;
}

}  // namespace spectrum::auction
