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

#ifndef ONTOSEED_SRC_SOURCE_HPP_
#define ONTOSEED_SRC_SOURCE_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>

namespace ontoseed {

// Byte stream feeding the ingester. read() returns 0 at end of input and
// throws IngestError on failure.
class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual std::size_t read(char* buf, std::size_t n) = 0;
  std::uint64_t offset() const { return offset_; }

 protected:
  std::uint64_t offset_ = 0;
};

class StreamSource : public ByteSource {
 public:
  explicit StreamSource(std::istream& in) : in_(in) {}
  std::size_t read(char* buf, std::size_t n) override;

 private:
  std::istream& in_;
};

// Plain files for anything but *.gz, zlib otherwise.
std::unique_ptr<ByteSource> open_source(const std::filesystem::path& path);

// Splits the byte stream into chunks that end on a line boundary.
class ChunkReader {
 public:
  ChunkReader(ByteSource& src, std::size_t chunk_bytes)
      : src_(src), chunk_bytes_(chunk_bytes < 4096 ? 4096 : chunk_bytes) {}

  bool next(std::string* chunk);

 private:
  ByteSource& src_;
  std::size_t chunk_bytes_;
  std::string carry_;
  bool eof_ = false;
};

}  // namespace ontoseed

#endif  // ONTOSEED_SRC_SOURCE_HPP_
