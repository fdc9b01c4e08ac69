// Copyright 2023 The Authors.
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

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "potts_hodge/error.hpp"
#include "potts_hodge/matroid.hpp"

namespace potts_hodge {

// Accepted encodings:
//   {"type":"uniform","rank":R,"n":N}
//   {"type":"graphic","vertices":V,"edges":[[u,v],...]}
//   {"type":"linear","field":P,"matrix":[[row],...]}
//   {"type":"rank_table","n":N,"ranks":[r_0,...,r_{2^N-1}]}
inline Matroid MatroidFromJson(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "uniform") {
      return MakeUniform(j.at("rank").get<int>(), j.at("n").get<int>());
    }
    if (type == "graphic") {
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
          throw Error(ErrorKind::kParseError, "edge must be a pair [u,v]");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return MakeGraphic(j.at("vertices").get<int>(), edges);
    }
    if (type == "linear") {
      auto matrix =
          j.at("matrix").get<std::vector<std::vector<long long>>>();
      return MakeLinear(j.at("field").get<long long>(), matrix);
    }
    if (type == "rank_table") {
      return MakeRankTable(j.at("n").get<int>(),
                           j.at("ranks").get<std::vector<int>>());
    }
    throw Error(ErrorKind::kParseError, "unknown matroid type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
}

// Any matroid serializes losslessly as its rank table.
inline nlohmann::json MatroidToJson(const Matroid& m) {
  return {{"type", "rank_table"}, {"n", m.size()}, {"ranks", m.RankTable()}};
}

inline nlohmann::json ParseJsonText(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line/column for the message.
    std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::kParseError,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(column) + " (offset " +
                    std::to_string(offset) + "): " + e.what());
  }
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidParameters, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Matroid LoadMatroid(const std::string& path) {
  return MatroidFromJson(ParseJsonText(ReadFile(path)));
}

}  // namespace potts_hodge
