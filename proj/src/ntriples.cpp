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

#include "ontoseed/ntriples.hpp"

#include <cstdint>

namespace ontoseed {
namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_alnum(char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && is_ws(s_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  bool iri(std::string_view* out) {
    if (peek() != '<') return false;
    std::size_t start = ++pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '>') {
        *out = s_.substr(start, pos_ - start);
        ++pos_;
        return !out->empty();
      }
      if (c == ' ' || c == '<' || c == '"' || c == '\t') return false;
      ++pos_;
    }
    return false;
  }

  bool blank(std::string_view* out) {
    if (s_.substr(pos_, 2) != "_:") return false;
    std::size_t start = pos_;
    pos_ += 2;
    while (pos_ < s_.size() && !is_ws(s_[pos_]) && s_[pos_] != '.') ++pos_;
    *out = s_.substr(start, pos_ - start);
    return pos_ - start > 2;
  }

  bool literal(RawTerm* out) {
    if (peek() != '"') return false;
    std::size_t start = ++pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '"') break;
      ++pos_;
    }
    if (pos_ >= s_.size()) return false;
    out->type = TermType::kLiteral;
    out->value = s_.substr(start, pos_ - start);
    ++pos_;
    if (peek() == '@') {
      std::size_t lang_start = ++pos_;
      if (!is_alpha(peek())) return false;
      while (is_alpha(peek())) ++pos_;
      while (peek() == '-') {
        ++pos_;
        if (!is_alnum(peek())) return false;
        while (is_alnum(peek())) ++pos_;
      }
      out->lang = s_.substr(lang_start, pos_ - lang_start);
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (!iri(&out->datatype)) return false;
    }
    return true;
  }

  bool term(RawTerm* out, bool allow_literal, bool allow_blank) {
    *out = RawTerm{};
    char c = peek();
    if (c == '<') {
      out->type = TermType::kIri;
      return iri(&out->value);
    }
    if (c == '_' && allow_blank) {
      out->type = TermType::kBlankNode;
      return blank(&out->value);
    }
    if (c == '"' && allow_literal) return literal(out);
    return false;
  }

  bool end_of_statement() {
    skip_ws();
    if (peek() != '.') return false;
    ++pos_;
    skip_ws();
    return at_end() || peek() == '#';
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

void append_utf8(std::uint32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

LineStatus parse_ntriples_line(std::string_view line, RawTriple* out) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  Cursor cur(line);
  cur.skip_ws();
  if (cur.at_end() || cur.peek() == '#') return LineStatus::kBlankOrComment;

  if (!cur.term(&out->subject, false, true)) return LineStatus::kMalformed;
  cur.skip_ws();
  if (!cur.term(&out->predicate, false, false)) return LineStatus::kMalformed;
  cur.skip_ws();
  if (!cur.term(&out->object, true, true)) return LineStatus::kMalformed;
  if (!cur.end_of_statement()) return LineStatus::kMalformed;
  return LineStatus::kTriple;
}

std::optional<std::string> unescape_ntriples(std::string_view raw) {
  if (raw.find('\\') == std::string_view::npos) return std::string(raw);
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= raw.size()) return std::nullopt;
    switch (raw[i]) {
      case 't': out.push_back('\t'); break;
      case 'b': out.push_back('\b'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\'': out.push_back('\''); break;
      case '\\': out.push_back('\\'); break;
      case 'u':
      case 'U': {
        std::size_t digits = raw[i] == 'u' ? 4 : 8;
        std::uint32_t cp = 0;
        for (std::size_t k = 1; k <= digits; ++k) {
          if (i + k >= raw.size()) return std::nullopt;
          int h = hex_value(raw[i + k]);
          if (h < 0) return std::nullopt;
          cp = cp * 16 + static_cast<std::uint32_t>(h);
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
        append_utf8(cp, &out);
        i += digits;
        break;
      }
      default:
        return std::nullopt;
    }
  }
  return out;
}

}  // namespace ontoseed
