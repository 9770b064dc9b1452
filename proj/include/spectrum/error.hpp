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

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectrum {

enum class ErrorCode {
  InvalidInput,
  DuplicateAgent,
  UnknownAgent,
  DuplicateToken,
  UnknownToken,
  UnknownAuction,
  TokenExpired,
  InsufficientFunds,
  NotOwner,
  AccessDenied,
  AlreadyListed,
  PhaseViolation,
  WrongMechanism,
  SelfDealing,
  AuctionEnded,
  NoCommit,
  DigestMismatch,
  EmptyHistory,
  MarketFailure,
  BrainFailure,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All rejected market operations surface as MarketError. The ledger and the
// auction house leave their state untouched when they throw.
class MarketError : public std::runtime_error {
 public:
  MarketError(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spectrum
