// Copyright 2026 The Leastcore Authors.
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


#include "leastcore/game_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "leastcore/games.h"
#include "leastcore/text.h"

namespace leastcore {
namespace {

std::string NextLine(std::istream& in, int& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (!t.empty()) return t;
  }
  throw Error(ErrorCode::kParseError,
              "unexpected end of game file after line " +
                  std::to_string(line_no));
}

std::vector<std::string> Fields(const std::string& line, size_t expected,
                                int line_no) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  if (out.size() != expected) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": expected " +
                    std::to_string(expected) + " fields");
  }
  return out;
}

}  // namespace

std::string CoalitionToHex(const Coalition& coalition) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int n = coalition.num_players();
  const int digits = std::max(1, (n + 3) / 4);
  std::string out(digits, '0');
  for (int d = 0; d < digits; ++d) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const int player = d * 4 + b;
      if (player < n && coalition.Contains(player)) nibble |= 1 << b;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

Coalition CoalitionFromHex(int num_players, std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  Coalition c(num_players);
  const int digits = static_cast<int>(hex.size());
  for (int d = 0; d < digits; ++d) {
    const char ch = hex[digits - 1 - d];
    int nibble;
    if (ch >= '0' && ch <= '9') {
      nibble = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      nibble = ch - 'A' + 10;
    } else {
      throw Error(ErrorCode::kParseError,
                  "bad hex digit in '" + std::string(hex) + "'");
    }
    for (int b = 0; b < 4; ++b) {
      if ((nibble >> b) & 1) {
        const int player = d * 4 + b;
        if (player >= num_players) {
          throw Error(ErrorCode::kParseError, "mask exceeds player count");
        }
        c.Insert(player);
      }
    }
  }
  return c;
}

void WriteGame(std::ostream& out, const CharacteristicOracle& game) {
  if (const auto* wvg = dynamic_cast<const WeightedVotingGame*>(&game)) {
    out << "wvg " << wvg->num_players() << ' ' << FormatExact(wvg->quota())
        << '\n';
    for (double w : wvg->weights()) out << FormatExact(w) << '\n';
    return;
  }
  if (const auto* g = dynamic_cast<const InducedSubgraphGame*>(&game)) {
    const WeightedGraph& graph = g->graph();
    out << "graph " << graph.num_vertices << ' ' << graph.edges.size() << '\n';
    for (const WeightedEdge& e : graph.edges) {
      out << e.u << ' ' << e.v << ' ' << FormatExact(e.weight) << '\n';
    }
    return;
  }
  if (const auto* mcn = dynamic_cast<const MarginalContributionNetwork*>(&game)) {
    out << "mcn " << mcn->num_players() << ' ' << mcn->rules().size() << '\n';
    for (const McnRule& r : mcn->rules()) {
      out << CoalitionToHex(r.positive) << ' ' << CoalitionToHex(r.negative)
          << ' ' << FormatExact(r.weight) << '\n';
    }
    return;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "only wvg, graph and mcn games are serializable");
}

OraclePtr ReadGame(std::istream& in) {
  int line_no = 0;
  const std::vector<std::string> header = Fields(NextLine(in, line_no), 3,
                                                 line_no);
  const int n = static_cast<int>(ParseInt(header[1]));
  if (header[0] == "wvg") {
    const double quota = ParseDouble(header[2]);
    std::vector<double> weights(n);
    for (double& w : weights) {
      w = ParseDouble(Fields(NextLine(in, line_no), 1, line_no)[0]);
    }
    return std::make_shared<WeightedVotingGame>(std::move(weights), quota);
  }
  if (header[0] == "graph") {
    const long long m = ParseInt(header[2]);
    WeightedGraph graph;
    graph.num_vertices = n;
    for (long long k = 0; k < m; ++k) {
      const auto f = Fields(NextLine(in, line_no), 3, line_no);
      graph.edges.push_back({static_cast<int>(ParseInt(f[0])),
                             static_cast<int>(ParseInt(f[1])),
                             ParseDouble(f[2])});
    }
    return std::make_shared<InducedSubgraphGame>(std::move(graph));
  }
  if (header[0] == "mcn") {
    const long long k = ParseInt(header[2]);
    std::vector<McnRule> rules;
    for (long long r = 0; r < k; ++r) {
      const auto f = Fields(NextLine(in, line_no), 3, line_no);
      rules.push_back({CoalitionFromHex(n, f[0]), CoalitionFromHex(n, f[1]),
                       ParseDouble(f[2])});
    }
    return std::make_shared<MarginalContributionNetwork>(n, std::move(rules));
  }
  throw Error(ErrorCode::kParseError, "unknown game kind '" + header[0] + "'");
}

void SaveGame(const std::string& path, const CharacteristicOracle& game) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  WriteGame(out, game);
}

OraclePtr LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return ReadGame(in);
}

}  // namespace leastcore
