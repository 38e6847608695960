/******************************************************************************
 * Copyright 2026 The OOC Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "ooc/scenario_file.hpp"

#include <cctype>
#include <charconv>

#include "ooc/errors.hpp"

namespace ooc::file {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::string& origin) : s_(text), origin_(origin) {}

  Document run() {
    Document doc;
    doc.sections.push_back(Section{"", 1, {}});
    for (;;) {
      skip_blank(true);
      if (eof()) break;
      if (peek() == '[') {
        const std::size_t line = line_;
        ++pos_;
        skip_blank(false);
        std::string name = bare_key("section name");
        while (peek() == '.') {
          ++pos_;
          name += "." + bare_key("section name");
        }
        skip_blank(false);
        expect(']');
        end_of_statement();
        for (const Section& sec : doc.sections) {
          if (sec.name == name) fail_at(line, 1, "unique section name", "repeated [" + name + "]");
        }
        doc.sections.push_back(Section{name, line, {}});
        continue;
      }
      const std::size_t line = line_;
      std::string key = bare_key("key or [section]");
      skip_blank(false);
      expect('=');
      skip_blank(false);
      Value v = value();
      end_of_statement();
      doc.sections.back().entries.push_back(Entry{std::move(key), std::move(v), line});
    }
    return doc;
  }

 private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  std::string describe_here() const {
    if (eof()) return "end of input";
    const char c = s_[pos_];
    if (c == '\n') return "end of line";
    return std::string("'") + c + "'";
  }

  [[noreturn]] void fail_at(std::size_t line, std::size_t col, const std::string& expected,
                            const std::string& found) const {
    throw Error(ErrorCode::ParseError, origin_ + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                           ": expected " + expected + ", found " + found);
  }
  [[noreturn]] void fail(const std::string& expected) const {
    fail_at(line_, pos_ - line_start_ + 1, expected, describe_here());
  }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  // Skips spaces, tabs and comments; newlines only when `newlines` is set.
  void skip_blank(bool newlines) {
    while (!eof()) {
      const char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (!eof() && s_[pos_] != '\n') ++pos_;
      } else if (c == '\n' && newlines) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  void end_of_statement() {
    skip_blank(false);
    if (eof()) return;
    if (peek() != '\n') fail("end of line");
    advance();
  }

  static bool key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

  std::string bare_key(const std::string& what) {
    const std::size_t start = pos_;
    while (!eof() && key_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail(what);
    return s_.substr(start, pos_ - start);
  }

  Value value() {
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.data = string_literal();
    } else if (c == '[') {
      v.data = array();
    } else if (c == '{') {
      v.data = inline_table();
    } else if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      v.data = number();
    } else if (s_.compare(pos_, 4, "true") == 0 && !key_char(s_.size() > pos_ + 4 ? s_[pos_ + 4] : ' ')) {
      pos_ += 4;
      v.data = true;
    } else if (s_.compare(pos_, 5, "false") == 0 && !key_char(s_.size() > pos_ + 5 ? s_[pos_ + 5] : ' ')) {
      pos_ += 5;
      v.data = false;
    } else {
      fail("a value");
    }
    return v;
  }

  std::string string_literal() {
    expect('"');
    std::string out;
    for (;;) {
      if (eof() || peek() == '\n') fail("closing '\"'");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      switch (peek()) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail("escape \\\", \\\\, \\n or \\t");
      }
      ++pos_;
    }
    return out;
  }

  Number number() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                      ((s_[pos_] == '+' || s_[pos_] == '-') && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    Number n;
    n.text = s_.substr(start, pos_ - start);
    const char* first = n.text.data() + (n.text.front() == '+' ? 1 : 0);
    const char* last = n.text.data() + n.text.size();
    const auto res = std::from_chars(first, last, n.value);
    if (res.ec != std::errc() || res.ptr != last) {
      fail_at(line_, start - line_start_ + 1, "a number", "'" + n.text + "'");
    }
    return n;
  }

  Array array() {
    expect('[');
    Array out;
    for (;;) {
      skip_blank(true);
      if (peek() == ']') break;
      out.push_back(value());
      skip_blank(true);
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() != ']') fail("',' or ']'");
    }
    ++pos_;
    return out;
  }

  Table inline_table() {
    expect('{');
    Table out;
    for (;;) {
      skip_blank(true);
      if (peek() == '}') break;
      std::string key = bare_key("key");
      for (const auto& kv : out) {
        if (kv.first == key) fail_at(line_, pos_ - line_start_ + 1 - key.size(), "unique key", "repeated '" + key + "'");
      }
      skip_blank(false);
      expect('=');
      skip_blank(true);
      out.emplace_back(std::move(key), value());
      skip_blank(true);
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() != '}') fail("',' or '}'");
    }
    ++pos_;
    return out;
  }

  const std::string& s_;
  const std::string& origin_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

Document parse_document(const std::string& text, const std::string& origin) { return Parser(text, origin).run(); }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace ooc::file
