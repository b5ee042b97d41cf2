#ifndef ISLANDING_JSON_FIELDS_HPP
#define ISLANDING_JSON_FIELDS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "islanding/error.hpp"

namespace islanding::detail {

using json = nlohmann::json;

/// Parses text as JSON; syntax errors carry line:column.
inline json parse_json_text(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::parse, std::string(what) + " line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": " + e.what());
  }
}

/// A JSON node together with its path (e.g. `branches[3]`) for error messages.
class Field {
 public:
  Field(const json& node, std::string path) : node_(&node), path_(std::move(path)) {}

  const json& node() const { return *node_; }
  const std::string& path() const { return path_; }

  bool has(std::string_view key) const {
    return node_->is_object() && node_->contains(key) && !(*node_)[std::string(key)].is_null();
  }

  Field at(std::string_view key) const {
    if (!node_->is_object()) fail("expected an object");
    auto it = node_->find(key);
    if (it == node_->end()) throw Error(ErrorCode::parse, "missing field " + child(key));
    return Field(*it, child(key));
  }

  std::optional<Field> maybe(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }

  Field operator[](std::size_t i) const {
    return Field((*node_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t size() const {
    if (!node_->is_array()) fail("expected an array");
    return node_->size();
  }

  double number() const {
    if (!node_->is_number()) fail("expected a number");
    double v = node_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  int integer() const {
    if (!node_->is_number_integer()) fail("expected an integer");
    return node_->get<int>();
  }

  std::string string() const {
    if (!node_->is_string()) fail("expected a string");
    return node_->get<std::string>();
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? at(key).number() : fallback;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::parse, "field " + (path_.empty() ? std::string("<root>") : path_) + ": " + msg);
  }

 private:
  std::string child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* node_;
  std::string path_;
};

}  // namespace islanding::detail

#endif  // ISLANDING_JSON_FIELDS_HPP
