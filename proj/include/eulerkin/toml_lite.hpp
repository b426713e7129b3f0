#ifndef EULERKIN_TOML_LITE_HPP
#define EULERKIN_TOML_LITE_HPP

#include <map>
#include <string>
#include <vector>

#include "eulerkin/errors.hpp"

namespace eulerkin::toml {

/// Minimal TOML subset: comments, [tables], [[arrays of tables]], and
/// key = string | number | bool | [scalar array]. Enough for run configs;
/// parse errors carry line numbers.
struct Value {
  enum class Kind { string, number, boolean, array, table };
  Kind kind = Kind::table;
  std::string str;
  double num = 0.0;
  bool b = false;
  std::vector<Value> arr;
  std::map<std::string, Value> tab;
  int line = 0;

  bool is_table() const { return kind == Kind::table; }
  bool is_array() const { return kind == Kind::array; }
  bool is_number() const { return kind == Kind::number; }
  bool is_string() const { return kind == Kind::string; }
  bool is_bool() const { return kind == Kind::boolean; }

  bool has(const std::string& key) const { return tab.count(key) > 0; }
  const Value* find(const std::string& key) const {
    auto it = tab.find(key);
    return it == tab.end() ? nullptr : &it->second;
  }

  double as_number(const std::string& context) const;
  int as_int(const std::string& context) const;
  bool as_bool(const std::string& context) const;
  const std::string& as_string(const std::string& context) const;
  std::vector<double> as_number_array(const std::string& context) const;
};

Value parse_string(const std::string& text);
Value parse_file(const std::string& path);

}  // namespace eulerkin::toml

#endif
