// Copyright 2026 The newsrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEWSREC_TOOLS_CLI_H_
#define NEWSREC_TOOLS_CLI_H_

#include <ostream>

namespace newsrec::cli {

// Entry point of the `newsrec` tool. Returns the process exit code: 0 on
// success, 1 for runtime failures, 2 for usage and configuration errors.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace newsrec::cli

#endif  // NEWSREC_TOOLS_CLI_H_
