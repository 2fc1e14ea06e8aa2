#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfwm/errors.hpp"

namespace sfwm::io {

using json = nlohmann::ordered_json;

inline std::string format_number(double v, int digits) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace detail {

inline void dump(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(std::size_t(indent * (depth + 1)), ' ');
  const std::string pad_close(std::size_t(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad_close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        dump(j[k], out, indent, depth + 1);
      }
      out += "\n" + pad_close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_number(j.get<double>(), 17);
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// JSON text with every float written to 17 significant digits.
inline std::string dump_json(const json& j, int indent = 2) {
  std::string out;
  detail::dump(j, out, indent, 0);
  out += "\n";
  return out;
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

/// Typed access to a JSON object that names the offending key on failure
/// and rejects keys it was never asked about.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    if (!has(key)) return;
    out = as<T>(j_.at(key), key);
  }

  template <class T>
  void get(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) {
      out.reset();
      return;
    }
    out = as<T>(j_.at(key), key);
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Reader(has(key) ? j_.at(key) : empty, path_.empty() ? key : path_ + "." + key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(where(it.key()) + ": unknown key");
    }
  }

  std::string where(const std::string& key = "") const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  template <class T>
  T as(const json& v, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0)) {
          throw ConfigError(where(key) + ": expected a non-negative integer");
        }
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

/// Parses JSON text, reporting the line and column of syntax errors.
inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON (" << e.what() << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace sfwm::io
