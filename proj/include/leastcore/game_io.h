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


// Line-oriented text format for the compact game families:
//
//   wvg <n> <quota>         followed by n weight lines
//   graph <n> <m>           followed by m lines "u v weight"
//   mcn <n> <k>             followed by k lines "P-hex N-hex weight"
//
// Reals are printed with 17 significant digits so a read-back is exact.

#ifndef LEASTCORE_GAME_IO_H_
#define LEASTCORE_GAME_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>

#include "leastcore/game_core.h"

namespace leastcore {

void WriteGame(std::ostream& out, const CharacteristicOracle& game);
OraclePtr ReadGame(std::istream& in);

void SaveGame(const std::string& path, const CharacteristicOracle& game);
OraclePtr LoadGame(const std::string& path);

// Most-significant digit first, no prefix.
std::string CoalitionToHex(const Coalition& coalition);
Coalition CoalitionFromHex(int num_players, std::string_view hex);

}  // namespace leastcore

#endif  // LEASTCORE_GAME_IO_H_
