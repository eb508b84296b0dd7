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

#ifndef ONTOSEED_IRI_HPP_
#define ONTOSEED_IRI_HPP_

#include <string>
#include <string_view>

namespace ontoseed {

// Absolute IRI with a scheme and none of the characters N-Triples forbids
// inside angle brackets.
bool is_valid_iri(std::string_view iri);

// Text after the last '/' or '#', e.g. "Q101487" for a Wikidata entity.
std::string_view iri_local_name(std::string_view iri);

}  // namespace ontoseed

#endif  // ONTOSEED_IRI_HPP_
