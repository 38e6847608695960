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

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ooc::file {

struct Value;
using Array = std::vector<Value>;
using Table = std::vector<std::pair<std::string, Value>>;

struct Number {
  double value = 0.0;
  std::string text;  // as written, for exact integer conversion
};

/// A parsed value: number, string, boolean, array or inline table.
struct Value {
  std::variant<Number, std::string, bool, Array, Table> data;
  std::size_t line = 0;

  bool is_number() const { return std::holds_alternative<Number>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
  bool is_table() const { return std::holds_alternative<Table>(data); }
};

struct Entry {
  std::string key;
  Value value;
  std::size_t line = 0;
};

struct Section {
  std::string name;  // empty for the top level
  std::size_t line = 0;
  std::vector<Entry> entries;
};

/// A TOML-like document. Unlike TOML a key may repeat inside a section;
/// whether that is allowed is up to the schema reading the document.
struct Document {
  std::vector<Section> sections;  // sections[0] is the top level
};

/// Throws Error{ParseError} with "<origin>:<line>:<col>: expected X, found Y".
Document parse_document(const std::string& text, const std::string& origin = "<input>");

/// Quoted string literal with the escapes the parser understands.
std::string quote(const std::string& s);

}  // namespace ooc::file
