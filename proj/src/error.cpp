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

#include "spectrum/error.hpp"

namespace spectrum {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::DuplicateAgent: return "duplicate-agent";
    case ErrorCode::UnknownAgent: return "unknown-agent";
    case ErrorCode::DuplicateToken: return "duplicate-token";
    case ErrorCode::UnknownToken: return "unknown-token";
    case ErrorCode::UnknownAuction: return "unknown-auction";
    case ErrorCode::TokenExpired: return "token-expired";
    case ErrorCode::InsufficientFunds: return "insufficient-funds";
    case ErrorCode::NotOwner: return "not-owner";
    case ErrorCode::AccessDenied: return "access-denied";
    case ErrorCode::AlreadyListed: return "already-listed";
    case ErrorCode::PhaseViolation: return "phase-violation";
    case ErrorCode::WrongMechanism: return "wrong-mechanism";
    case ErrorCode::SelfDealing: return "self-dealing";
    case ErrorCode::AuctionEnded: return "already-ended";
    case ErrorCode::NoCommit: return "no-commit";
    case ErrorCode::DigestMismatch: return "digest-mismatch";
    case ErrorCode::EmptyHistory: return "empty-history";
    case ErrorCode::MarketFailure: return "market-failure";
    case ErrorCode::BrainFailure: return "brain-failure";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::ValidationError: return "validation-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

MarketError::MarketError(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace spectrum
