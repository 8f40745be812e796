#include "jetcalc/toml_lite.hpp"

#include <cctype>

namespace jetcalc {

namespace {

class TomlReader {
public:
  explicit TomlReader(std::string_view s) : s_(s) {}

  Json run() {
    Json root = Json::object();
    Json* table = &root;
    for (;;) {
      skip_blank_lines();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '[') {
        bool array = pos_ + 1 < s_.size() && s_[pos_ + 1] == '[';
        pos_ += array ? 2 : 1;
        auto path = dotted_key();
        skip_inline_ws();
        if (!eat(']') || (array && !eat(']'))) fail("expected ']' after table header");
        end_of_line();
        table = open_table(root, path, array);
      } else {
        auto path = dotted_key();
        skip_inline_ws();
        if (!eat('=')) fail("expected '='");
        skip_inline_ws();
        Json v = value('\n');
        end_of_line();
        Json* target = table;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
          Json& next = (*target)[path[i]];
          if (next.is_null()) next = Json::object();
          target = &next;
        }
        if (target->contains(path.back())) fail("duplicate key '" + path.back() + "'");
        (*target)[path.back()] = std::move(v);
      }
    }
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& msg) { throw TomlError(msg, line_); }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_inline_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }

  void skip_comment() {
    if (pos_ < s_.size() && s_[pos_] == '#')
      while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
  }

  // Whitespace, newlines and comments (inside arrays and between entries).
  void skip_all_ws() {
    for (;;) {
      skip_inline_ws();
      skip_comment();
      if (pos_ < s_.size() && s_[pos_] == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      return;
    }
  }

  void skip_blank_lines() { skip_all_ws(); }

  void end_of_line() {
    skip_inline_ws();
    skip_comment();
    if (pos_ < s_.size() && !eat('\n')) fail("unexpected text after value");
    ++line_;
  }

  std::string bare_key() {
    size_t st = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-'))
      ++pos_;
    if (st == pos_) fail("expected a key");
    return std::string(s_.substr(st, pos_ - st));
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> path;
    for (;;) {
      skip_inline_ws();
      if (pos_ < s_.size() && s_[pos_] == '"') path.push_back(basic_string());
      else path.push_back(bare_key());
      skip_inline_ws();
      if (!eat('.')) break;
    }
    return path;
  }

  Json* open_table(Json& root, const std::vector<std::string>& path, bool array) {
    Json* cur = &root;
    for (size_t i = 0; i < path.size(); ++i) {
      Json& next = (*cur)[path[i]];
      bool last = i + 1 == path.size();
      if (last && array) {
        if (next.is_null()) next = Json::array();
        if (!next.is_array()) fail("'" + path[i] + "' is not an array of tables");
        next.push_back(Json::object());
        return &next.back();
      }
      if (next.is_null()) next = Json::object();
      if (next.is_array()) {
        if (next.empty()) fail("empty array of tables");
        cur = &next.back();
      } else if (next.is_object()) {
        cur = &next;
      } else {
        fail("'" + path[i] + "' is not a table");
      }
    }
    return cur;
  }

  std::string basic_string() {
    if (s_.substr(pos_, 3) == "\"\"\"") {
      pos_ += 3;
      if (eat('\n')) ++line_;
      std::string out;
      while (pos_ < s_.size() && s_.substr(pos_, 3) != "\"\"\"") {
        if (s_[pos_] == '\n') ++line_;
        out += s_[pos_++];
      }
      if (pos_ >= s_.size()) fail("unterminated multi-line string");
      pos_ += 3;
      return out;
    }
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\n') fail("newline in string");
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    if (!eat('"')) fail("unterminated string");
    return out;
  }

  std::string literal_string() {
    ++pos_;
    size_t st = pos_;
    while (pos_ < s_.size() && s_[pos_] != '\'' && s_[pos_] != '\n') ++pos_;
    if (!eat('\'')) fail("unterminated literal string");
    return std::string(s_.substr(st, pos_ - 1 - st));
  }

  // Raw text up to a delimiter, for values such as `-2/p`.
  std::string raw_until(char closer) {
    size_t st = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n' || c == '#') break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ',' || (closer != '\n' && c == closer))) break;
      ++pos_;
    }
    std::string out(s_.substr(st, pos_ - st));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    if (out.empty()) fail("expected a value");
    return out;
  }

  bool at_value_end(char closer) {
    size_t p = pos_;
    while (p < s_.size() && (s_[p] == ' ' || s_[p] == '\t' || s_[p] == '\r')) ++p;
    if (p >= s_.size()) return true;
    char c = s_[p];
    return c == '\n' || c == '#' || c == ',' || c == closer;
  }

  Json value(char closer) {
    if (pos_ >= s_.size()) fail("expected a value");
    char c = s_[pos_];
    if (c == '"') return basic_string();
    if (c == '\'') return literal_string();
    if (c == '[') {
      ++pos_;
      Json arr = Json::array();
      for (;;) {
        skip_all_ws();
        if (eat(']')) break;
        arr.push_back(value(']'));
        skip_all_ws();
        if (eat(',')) continue;
        if (eat(']')) break;
        fail("expected ',' or ']' in array");
      }
      return arr;
    }
    if (c == '{') {
      ++pos_;
      Json obj = Json::object();
      skip_inline_ws();
      if (eat('}')) return obj;
      for (;;) {
        auto path = dotted_key();
        skip_inline_ws();
        if (!eat('=')) fail("expected '=' in inline table");
        skip_inline_ws();
        obj[path.back()] = value('}');
        skip_inline_ws();
        if (eat(',')) {
          skip_inline_ws();
          continue;
        }
        if (eat('}')) break;
        fail("expected ',' or '}' in inline table");
      }
      return obj;
    }
    if (s_.substr(pos_, 4) == "true" && (pos_ += 4, at_value_end(closer))) return true;
    if (s_.substr(pos_, 5) == "false" && (pos_ += 5, at_value_end(closer))) return false;
    size_t st = pos_;
    size_t p = pos_;
    if (p < s_.size() && (s_[p] == '-' || s_[p] == '+')) ++p;
    size_t digits = p;
    while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
    if (p > digits) {
      size_t save = pos_;
      pos_ = p;
      if (at_value_end(closer)) {
        std::string num(s_.substr(st, p - st));
        try {
          return std::stoll(num);
        } catch (...) {
          return num;
        }
      }
      pos_ = save;
    }
    return raw_until(closer);
  }

  std::string_view s_;
  size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

Json parse_toml(std::string_view text) {
  TomlReader r(text);
  return r.run();
}

std::string toml_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace jetcalc
