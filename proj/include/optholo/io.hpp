// Copyright 2026 The optholo Authors
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

#pragma once

// JSON encodings shared by the command-line tool:
//
//   loop file : {"plane": "I"|"II"|"III", "orientation": 1|-1,
//                "rect": {"u_min":…, "u_max":…, "v_min":…, "v_max":…}}
//            or {…, "polyline": [[u, v], …]}
//            or {…, "path": [[u, v], …]}      (concatenated loops)
//               optional "target_sigma": number
//   matrices  : nested row arrays of [re, im] pairs

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "optholo/linalg.hpp"
#include "optholo/loops.hpp"

namespace optholo {

using Json = nlohmann::json;

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to a fixed number of significant digits before emission so that
/// output is stable and readable.
class Rounder {
 public:
  explicit Rounder(int digits = 12) : digits_(digits) {}

  double operator()(double x) const {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits_, x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;  // no negative zero
  }

  Json matrix(const CMatrix& m) const {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        row.push_back(Json::array({(*this)(m(i, j).real()), (*this)(m(i, j).imag())}));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  int digits() const { return digits_; }

 private:
  int digits_;
};

inline CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw ParseError("matrix: entries must be [re, im] pairs");
      }
      m(i, c) = {z[0].get<double>(), z[1].get<double>()};
    }
  }
  return m;
}

inline Plane plane_from_string(const std::string& s) {
  if (s == "I") return Plane::I;
  if (s == "II") return Plane::II;
  if (s == "III") return Plane::III;
  throw ParseError("plane must be \"I\", \"II\" or \"III\", got \"" + s + "\"");
}

namespace detail {

inline Json points_to_json(const std::vector<Point2>& pts) {
  Json arr = Json::array();
  for (const Point2& p : pts) arr.push_back(Json::array({p.u, p.v}));
  return arr;
}

inline std::vector<Point2> points_from_json(const Json& j, const char* key) {
  if (!j.is_array()) throw ParseError(std::string(key) + ": expected an array of [u, v]");
  std::vector<Point2> out;
  for (const Json& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(std::string(key) + ": vertices must be [u, v] number pairs");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

inline double number_field(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ParseError(std::string("rect: missing numeric field \"") + key + "\"");
  }
  return obj[key].get<double>();
}

}  // namespace detail

/// Full-precision encoding; parse(to_json(loop)) == loop.
inline Json loop_to_json(const LoopSpec& loop) {
  Json j;
  j["plane"] = plane_name(loop.plane());
  j["orientation"] = loop.orientation();
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Rect>) {
          j["rect"] = {{"u_min", s.u_min}, {"u_max", s.u_max},
                       {"v_min", s.v_min}, {"v_max", s.v_max}};
        } else if constexpr (std::is_same_v<S, Polyline>) {
          j["polyline"] = detail::points_to_json(s.vertices);
        } else {
          j["path"] = detail::points_to_json(s.vertices);
        }
      },
      loop.shape());
  return j;
}

struct LoopFile {
  LoopSpec loop;
  std::optional<double> target_sigma;
};

inline LoopFile loop_file_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("loop file: top level must be an object");
  if (!j.contains("plane") || !j["plane"].is_string()) {
    throw ParseError("loop file: missing string field \"plane\"");
  }
  const Plane plane = plane_from_string(j["plane"].get<std::string>());
  int orientation = 1;
  if (j.contains("orientation")) {
    if (!j["orientation"].is_number_integer()) {
      throw ParseError("loop file: \"orientation\" must be 1 or -1");
    }
    orientation = j["orientation"].get<int>();
  }
  const int shapes = j.contains("rect") + j.contains("polyline") + j.contains("path");
  if (shapes != 1) {
    throw ParseError("loop file: exactly one of \"rect\", \"polyline\", \"path\" required");
  }
  std::optional<double> target;
  if (j.contains("target_sigma")) {
    if (!j["target_sigma"].is_number()) throw ParseError("loop file: target_sigma must be a number");
    target = j["target_sigma"].get<double>();
  }
  try {
    if (j.contains("rect")) {
      const Json& r = j["rect"];
      const Rect rect{detail::number_field(r, "u_min"), detail::number_field(r, "u_max"),
                      detail::number_field(r, "v_min"), detail::number_field(r, "v_max")};
      return {LoopSpec::rect(plane, rect, orientation), target};
    }
    if (j.contains("polyline")) {
      return {LoopSpec::polyline(plane, detail::points_from_json(j["polyline"], "polyline"),
                                 orientation),
              target};
    }
    LoopSpec path = LoopSpec::closed_path(plane, detail::points_from_json(j["path"], "path"));
    if (orientation < 0) path = path.reversed();
    return {path, target};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("loop file: ") + e.what());
  }
}

inline LoopSpec loop_from_json(const Json& j) { return loop_file_from_json(j).loop; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline LoopFile read_loop_file(const std::string& path) {
  return loop_file_from_json(read_json_file(path));
}

}  // namespace optholo
