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

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "spectrum/money.hpp"

namespace spectrum {

/// Lower-case hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view data);

/// The committed plaintext: salt || ":" || decimal cent value.
std::string commit_preimage(std::string_view salt, Cents value);

std::string commit_digest(std::string_view salt, Cents value);

/// 16 random bytes, hex encoded.
std::string random_salt(std::mt19937_64& rng);

// Seeding and sampling helpers that do not depend on the standard library's
// distribution implementations, so streams are identical across toolchains.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound);

template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_index(rng, i)]);
  }
}

}  // namespace spectrum
