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

#include "spectrum/mechanism.hpp"

namespace spectrum {

std::string_view to_string(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::DirectSale: return "DirectSale";
    case Mechanism::FirstPrice: return "FirstPrice";
    case Mechanism::SecondPrice: return "SecondPrice";
  }
  return "DirectSale";
}

std::string_view short_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::DirectSale: return "ds";
    case Mechanism::FirstPrice: return "fp";
    case Mechanism::SecondPrice: return "sp";
  }
  return "ds";
}

std::optional<Mechanism> parse_mechanism(std::string_view text) {
  for (Mechanism m : {Mechanism::DirectSale, Mechanism::FirstPrice, Mechanism::SecondPrice}) {
    if (text == to_string(m) || text == short_name(m)) return m;
  }
  return std::nullopt;
}

}  // namespace spectrum
