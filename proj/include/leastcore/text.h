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


#ifndef LEASTCORE_TEXT_H_
#define LEASTCORE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace leastcore {

std::vector<std::string> SplitString(std::string_view text, char delimiter);
std::string Trim(std::string_view text);

// Whole-string parse; throws kParseError on trailing garbage.
double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

// 17 significant digits, round-trips every double.
std::string FormatExact(double value);
// %g, for labels and names.
std::string FormatShort(double value);

// Whole-file I/O; throws kIoError.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace leastcore

#endif  // LEASTCORE_TEXT_H_
