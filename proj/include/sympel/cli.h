//
// Copyright 2026 The Sympel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SYMPEL_CLI_H_
#define SYMPEL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace sympel::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // data or model errors
  kExitUsage = 2,
  kExitConfig = 3,
  kExitIo = 4,
  kExitEmbedder = 5,
};

// Runs the command line `args` (without the program name).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sympel::cli

#endif  // SYMPEL_CLI_H_
