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

#include <optional>
#include <string_view>

namespace spectrum {

enum class Mechanism { DirectSale, FirstPrice, SecondPrice };

/// Long form used in logs and JSON: "DirectSale", "FirstPrice", "SecondPrice".
std::string_view to_string(Mechanism mechanism);

/// CLI short form: "ds", "fp", "sp".
std::string_view short_name(Mechanism mechanism);

/// Accepts either the long or the short form.
std::optional<Mechanism> parse_mechanism(std::string_view text);

inline bool is_sealed_bid(Mechanism mechanism) {
  return mechanism != Mechanism::DirectSale;
}

}  // namespace spectrum
