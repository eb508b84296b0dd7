// Copyright 2026 The ontoseed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONTOSEED_TEXT_HPP_
#define ONTOSEED_TEXT_HPP_

#include <string>
#include <string_view>

namespace ontoseed {

struct NormalizeOptions {
  bool case_fold = false;
  friend bool operator==(const NormalizeOptions&, const NormalizeOptions&) = default;
};

// Canonical form used for every label and term comparison: Unicode NFC with
// surrounding white space (including U+3000) removed. Case folding is opt-in.
// Invalid UTF-8 is replaced with U+FFFD before normalization.
std::string normalize_term(std::string_view text, NormalizeOptions opts = {});

}  // namespace ontoseed

#endif  // ONTOSEED_TEXT_HPP_
