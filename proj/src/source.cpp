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

#include "source.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>

#include "ontoseed/common.hpp"

namespace ontoseed {

std::size_t StreamSource::read(char* buf, std::size_t n) {
  in_.read(buf, static_cast<std::streamsize>(n));
  if (in_.bad()) throw IngestError("stream read failure", offset_);
  auto got = static_cast<std::size_t>(in_.gcount());
  offset_ += got;
  return got;
}

namespace {

class FileSource : public ByteSource {
 public:
  explicit FileSource(const std::filesystem::path& path) : file_(std::fopen(path.c_str(), "rb")) {
    if (file_ == nullptr) {
      throw IngestError("cannot open " + path.string() + ": " + std::strerror(errno), 0);
    }
  }
  ~FileSource() override { std::fclose(file_); }
  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;

  std::size_t read(char* buf, std::size_t n) override {
    std::size_t got = std::fread(buf, 1, n, file_);
    if (got < n && std::ferror(file_)) {
      throw IngestError(std::string("read failure: ") + std::strerror(errno), offset_ + got);
    }
    offset_ += got;
    return got;
  }

 private:
  std::FILE* file_;
};

class GzipSource : public ByteSource {
 public:
  explicit GzipSource(const std::filesystem::path& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) throw IngestError("cannot open " + path.string(), 0);
    gzbuffer(file_, 1u << 18);
  }
  ~GzipSource() override { gzclose(file_); }
  GzipSource(const GzipSource&) = delete;
  GzipSource& operator=(const GzipSource&) = delete;

  std::size_t read(char* buf, std::size_t n) override {
    std::size_t total = 0;
    while (total < n) {
      auto want = static_cast<unsigned>(std::min<std::size_t>(n - total, 1u << 30));
      int got = gzread(file_, buf + total, want);
      if (got < 0) {
        int code = 0;
        const char* msg = gzerror(file_, &code);
        throw IngestError(std::string("gzip error: ") + msg, offset_ + total);
      }
      if (got == 0) {
        // A stream cut short reads as EOF with Z_BUF_ERROR pending.
        int code = Z_OK;
        const char* msg = gzerror(file_, &code);
        if (code != Z_OK) {
          throw IngestError(std::string("gzip error: ") + msg, offset_ + total);
        }
        break;
      }
      total += static_cast<std::size_t>(got);
    }
    offset_ += total;
    return total;
  }

 private:
  gzFile file_;
};

}  // namespace

std::unique_ptr<ByteSource> open_source(const std::filesystem::path& path) {
  if (path.extension() == ".gz") return std::make_unique<GzipSource>(path);
  return std::make_unique<FileSource>(path);
}

bool ChunkReader::next(std::string* chunk) {
  while (!eof_) {
    std::size_t old = carry_.size();
    carry_.resize(old + chunk_bytes_);
    std::size_t got = src_.read(carry_.data() + old, chunk_bytes_);
    carry_.resize(old + got);
    if (got == 0) {
      eof_ = true;
      break;
    }
    std::size_t nl = carry_.rfind('\n');
    if (nl == std::string::npos) continue;
    *chunk = carry_.substr(0, nl + 1);
    carry_.erase(0, nl + 1);
    return true;
  }
  if (carry_.empty()) return false;
  chunk->swap(carry_);
  carry_.clear();
  return true;
}

}  // namespace ontoseed
