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

#ifndef ONTOSEED_NTRIPLES_HPP_
#define ONTOSEED_NTRIPLES_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace ontoseed {

enum class TermType { kIri, kBlankNode, kLiteral };

// A term as it appears on the line. Views point into the parsed line.
// For IRIs value excludes the angle brackets; for literals it is the raw
// (still escaped) text between the quotes.
struct RawTerm {
  TermType type = TermType::kIri;
  std::string_view value;
  std::string_view lang;      // literals only, without '@'
  std::string_view datatype;  // literals only, IRI without brackets
};

struct RawTriple {
  RawTerm subject;
  RawTerm predicate;
  RawTerm object;
};

enum class LineStatus { kTriple, kBlankOrComment, kMalformed };

LineStatus parse_ntriples_line(std::string_view line, RawTriple* out);

// Decodes ECHAR and UCHAR escapes. Returns nullopt on a bad escape.
std::optional<std::string> unescape_ntriples(std::string_view raw);

}  // namespace ontoseed

#endif  // ONTOSEED_NTRIPLES_HPP_
