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


// The `leastcore` command-line driver, exposed as a function so tests can
// run commands in-process.

#ifndef LEASTCORE_CLI_H_
#define LEASTCORE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace leastcore::cli {

// args[0] is the program name. Returns the process exit code: 0 success,
// 2 configuration error, 3 numeric failure, 4 budget exhausted.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace leastcore::cli

#endif  // LEASTCORE_CLI_H_
