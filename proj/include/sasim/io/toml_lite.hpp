#pragma once

#include <json.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "sasim/common.hpp"

namespace sasim {

/// Small TOML reader covering the configuration subset this tool accepts:
/// comments, [tables], [[arrays of tables]], bare/dotted keys, basic
/// strings, integers, floats, booleans, arrays (multi-line allowed) and
/// inline tables. Dates and multi-line strings are not supported. Parsed
/// into a JSON document so the config layer is format-agnostic.
class TomlLite {
 public:
  static nlohmann::json parse(const std::string& text) {
    TomlLite p(text);
    return p.run();
  }

 private:
  explicit TomlLite(const std::string& text) : src_(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("config-error",
                "toml line " + std::to_string(line_) + ": " + msg);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return eof() ? '\0' : src_[pos_]; }
  char get() {
    const char c = src_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_ws_inline() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
      get();
  }

  /// whitespace, newlines and comments
  void skip_ws_all() {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect_line_end() {
    skip_ws_inline();
    if (eof()) return;
    if (peek() == '#') {
      while (!eof() && peek() != '\n') get();
    }
    if (!eof()) {
      if (peek() != '\n') fail("unexpected trailing characters");
      get();
    }
  }

  std::string parse_key_part() {
    skip_ws_inline();
    if (peek() == '"') return parse_basic_string();
    std::string k;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_' || peek() == '-'))
      k.push_back(get());
    if (k.empty()) fail("expected a key");
    return k;
  }

  std::vector<std::string> parse_dotted_key() {
    std::vector<std::string> parts{parse_key_part()};
    skip_ws_inline();
    while (peek() == '.') {
      get();
      parts.push_back(parse_key_part());
      skip_ws_inline();
    }
    return parts;
  }

  std::string parse_basic_string() {
    if (get() != '"') fail("expected '\"'");
    std::string out;
    while (true) {
      if (eof()) fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\n') fail("newline in string");
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        const char e = get();
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: fail("unsupported escape sequence");
        }
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  nlohmann::json parse_value() {
    skip_ws_all();
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '[') {
      get();
      nlohmann::json arr = nlohmann::json::array();
      skip_ws_all();
      if (peek() == ']') {
        get();
        return arr;
      }
      while (true) {
        arr.push_back(parse_value());
        skip_ws_all();
        if (peek() == ',') {
          get();
          skip_ws_all();
          if (peek() == ']') {  // trailing comma
            get();
            break;
          }
          continue;
        }
        if (peek() == ']') {
          get();
          break;
        }
        fail("expected ',' or ']' in array");
      }
      return arr;
    }
    if (c == '{') {
      get();
      nlohmann::json obj = nlohmann::json::object();
      skip_ws_inline();
      if (peek() == '}') {
        get();
        return obj;
      }
      while (true) {
        const auto key = parse_dotted_key();
        skip_ws_inline();
        if (get() != '=') fail("expected '=' in inline table");
        nlohmann::json* slot = &obj;
        for (size_t i = 0; i + 1 < key.size(); ++i) slot = &(*slot)[key[i]];
        (*slot)[key.back()] = parse_value();
        skip_ws_inline();
        if (peek() == ',') {
          get();
          skip_ws_inline();
          continue;
        }
        if (peek() == '}') {
          get();
          break;
        }
        fail("expected ',' or '}' in inline table");
      }
      return obj;
    }
    // bare scalar: bool or number
    std::string tok;
    while (!eof() && peek() != ',' && peek() != ']' && peek() != '}' &&
           peek() != '\n' && peek() != '#' && peek() != ' ' && peek() != '\t' &&
           peek() != '\r')
      tok.push_back(get());
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.empty()) fail("expected a value");
    try {
      if (tok.find_first_of(".eEiInN") == std::string::npos) {
        size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos == tok.size()) return v;
      }
      size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) fail("cannot parse value '" + tok + "'");
      return v;
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail("cannot parse value '" + tok + "'");
    }
  }

  nlohmann::json run() {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* current = &root;
    while (true) {
      skip_ws_all();
      if (eof()) break;
      if (peek() == '[') {
        get();
        const bool array_table = peek() == '[';
        if (array_table) get();
        const auto path = parse_dotted_key();
        skip_ws_inline();
        if (get() != ']') fail("expected ']'");
        if (array_table && get() != ']') fail("expected ']]'");
        expect_line_end();
        nlohmann::json* slot = &root;
        for (size_t i = 0; i < path.size(); ++i) {
          const bool last = i + 1 == path.size();
          nlohmann::json& child = (*slot)[path[i]];
          if (last && array_table) {
            if (!child.is_array()) child = nlohmann::json::array();
            child.push_back(nlohmann::json::object());
            slot = &child.back();
          } else {
            if (child.is_array()) {
              require(!child.empty(), "config-error",
                      "toml: dotted path through empty table array");
              slot = &child.back();
            } else {
              if (child.is_null()) child = nlohmann::json::object();
              slot = &child;
            }
          }
        }
        current = slot;
        continue;
      }
      const auto key = parse_dotted_key();
      skip_ws_inline();
      if (eof() || get() != '=') fail("expected '='");
      nlohmann::json* slot = current;
      for (size_t i = 0; i + 1 < key.size(); ++i) slot = &(*slot)[key[i]];
      (*slot)[key.back()] = parse_value();
      expect_line_end();
    }
    return root;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace sasim
