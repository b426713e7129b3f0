#include "eulerkin/toml_lite.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eulerkin::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "config line " << line << ": " << msg;
  throw ConfigError(os.str());
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

/// Remove a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

Value parse_scalar(const std::string& text, int line) {
  Value v;
  v.line = line;
  const std::string s = strip(text);
  if (s.empty()) fail(line, "missing value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') fail(line, "unterminated string");
    v.kind = Value::Kind::string;
    v.str = s.substr(1, s.size() - 2);
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = Value::Kind::boolean;
    v.b = s == "true";
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']') fail(line, "unterminated array");
    v.kind = Value::Kind::array;
    const std::string inner = strip(s.substr(1, s.size() - 2));
    if (inner.empty()) return v;
    std::size_t start = 0;
    while (start <= inner.size()) {
      std::size_t comma = inner.find(',', start);
      const std::string item =
          comma == std::string::npos ? inner.substr(start) : inner.substr(start, comma - start);
      v.arr.push_back(parse_scalar(item, line));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return v;
  }
  // Number.
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) fail(line, "trailing characters after number: '" + s + "'");
    if (!std::isfinite(x)) fail(line, "non-finite numbers are not allowed");
    v.kind = Value::Kind::number;
    v.num = x;
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "cannot parse value '" + s + "'");
  }
}

}  // namespace

double Value::as_number(const std::string& context) const {
  if (!is_number()) fail(line, context + ": expected a number");
  return num;
}

int Value::as_int(const std::string& context) const {
  const double x = as_number(context);
  if (std::abs(x - std::round(x)) > 1e-9) fail(line, context + ": expected an integer");
  return static_cast<int>(std::llround(x));
}

bool Value::as_bool(const std::string& context) const {
  if (!is_bool()) fail(line, context + ": expected true/false");
  return b;
}

const std::string& Value::as_string(const std::string& context) const {
  if (!is_string()) fail(line, context + ": expected a string");
  return str;
}

std::vector<double> Value::as_number_array(const std::string& context) const {
  if (!is_array()) fail(line, context + ": expected an array");
  std::vector<double> out;
  for (const auto& v : arr) out.push_back(v.as_number(context));
  return out;
}

Value parse_string(const std::string& text) {
  Value root;
  root.kind = Value::Kind::table;
  Value* current = &root;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      const bool array_table = s.size() > 1 && s[1] == '[';
      const std::size_t close = s.find(array_table ? "]]" : "]");
      if (close == std::string::npos) fail(line, "unterminated table header");
      const std::string name = strip(s.substr(array_table ? 2 : 1, close - (array_table ? 2 : 1)));
      if (!valid_key(name)) fail(line, "invalid table name '" + name + "'");
      if (strip(s.substr(close + (array_table ? 2 : 1))) != "")
        fail(line, "unexpected text after table header");
      if (array_table) {
        Value& slot = root.tab[name];
        if (slot.kind == Value::Kind::table && slot.tab.empty() && slot.arr.empty())
          slot.kind = Value::Kind::array;
        if (!slot.is_array()) fail(line, "'" + name + "' is already a plain table");
        Value t;
        t.kind = Value::Kind::table;
        t.line = line;
        slot.arr.push_back(t);
        current = &slot.arr.back();
      } else {
        if (root.has(name) && !root.tab[name].is_table())
          fail(line, "'" + name + "' redefined as a table");
        Value& slot = root.tab[name];
        slot.kind = Value::Kind::table;
        slot.line = line;
        current = &slot;
      }
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = strip(s.substr(0, eq));
    if (!valid_key(key)) fail(line, "invalid key '" + key + "'");
    if (current->has(key)) fail(line, "duplicate key '" + key + "'");
    current->tab[key] = parse_scalar(s.substr(eq + 1), line);
  }
  return root;
}

Value parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

}  // namespace eulerkin::toml
