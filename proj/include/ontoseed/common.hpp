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

#ifndef ONTOSEED_COMMON_HPP_
#define ONTOSEED_COMMON_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontoseed {

// Dense handle of an interned entity IRI. Handles are assigned in
// lexicographic IRI order when a store is finalized, so they do not depend on
// the order in which triples were read.
struct EntityId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr bool valid() const {
    return value != std::numeric_limits<std::uint32_t>::max();
  }
  friend constexpr auto operator<=>(EntityId, EntityId) = default;
};

using EntitySet = std::vector<EntityId>;  // sorted, unique

// Role a hierarchy predicate plays in the class model.
enum class Relation : std::uint8_t { kSubClassOf = 0, kInstanceOf = 1 };

enum class LabelKind : std::uint8_t { kRepresentative = 0, kAlias = 1 };

enum class Direction : std::uint8_t { kUp, kDown };

const char* relation_name(Relation r);
const char* label_kind_name(LabelKind k);

// Sorts and removes duplicates in place.
void canonicalize(EntitySet& set);
bool contains(const EntitySet& sorted, EntityId id);

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::uint64_t byte_offset)
      : std::runtime_error(what + " at byte offset " +
                           std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

class SnapshotError : public std::runtime_error {
 public:
  enum class Kind { kIo, kFormat, kVersion, kChecksum, kFingerprint };
  SnapshotError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class TermListError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ontoseed

template <>
struct std::hash<ontoseed::EntityId> {
  std::size_t operator()(ontoseed::EntityId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // ONTOSEED_COMMON_HPP_
