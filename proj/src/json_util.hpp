#pragma once

// Small helpers shared by the document readers and writers.

#include <charconv>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mps/common.hpp"

namespace mps::json_util {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Shortest representation that parses back to the same double.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Integral values are emitted as JSON integers so documents stay readable.
inline ordered_json number(double v) {
  if (v == 0.0) return 0;
  if (std::abs(v) < 9.0e15 && v == std::trunc(v)) return static_cast<std::int64_t>(v);
  return v;
}

inline ordered_json to_json(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

inline ordered_json to_json(const Matrix& m) {
  ordered_json a = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (double x : m.row(r)) row.push_back(number(x));
    a.push_back(std::move(row));
  }
  return a;
}

inline json parse_document(std::string_view doc, const char* what) {
  json j;
  try {
    j = json::parse(doc.begin(), doc.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kInvalidInput, std::string("schema: ") + what + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kInvalidInput, std::string("schema: ") + what + " must be an object");
  return j;
}

inline const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::kInvalidInput, std::string("schema: missing field '") + key + "'");
  return *it;
}

inline double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(ErrorCode::kInvalidInput, "schema: " + where + " must be a number");
  return v.get<double>();
}

inline double get_number(const json& j, const char* key) { return as_number(field(j, key), key); }

inline std::size_t get_count(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    fail(ErrorCode::kInvalidInput, std::string("schema: '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline bool get_bool(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) fail(ErrorCode::kInvalidInput, std::string("schema: '") + key + "' must be a boolean");
  return v.get<bool>();
}

inline std::vector<double> get_vector(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) fail(ErrorCode::kInvalidInput, std::string("schema: '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(as_number(v[k], std::string(key) + "[" + std::to_string(k) + "]"));
  return out;
}

/// Reads an array of equal-length rows; `empty_cols` is used when there are
/// no rows to infer the width from.
inline Matrix get_matrix(const json& j, const char* key, std::size_t empty_cols = 0) {
  const json& v = field(j, key);
  if (!v.is_array()) fail(ErrorCode::kInvalidInput, std::string("schema: '") + key + "' must be an array of arrays");
  if (v.empty()) return Matrix(0, empty_cols);
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Matrix m(v.size(), cols);
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (!v[r].is_array() || v[r].size() != cols)
      fail(ErrorCode::kInvalidInput, std::string("schema: '") + key + "' row " + std::to_string(r) +
                                         " is not an array of " + std::to_string(cols) + " numbers");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = as_number(v[r][c], std::string(key) + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace mps::json_util
