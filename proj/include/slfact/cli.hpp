/*
  Copyright (c) the slfact contributors.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SLFACT_CLI_HPP
#define SLFACT_CLI_HPP

#include <string>
#include <vector>

namespace slfact {

/// Runs the command-line front end on the given arguments (program name
/// excluded). Returns the process exit code: 0 success or verification pass,
/// 1 verification failure, 2 refusal, 3 malformed input.
int cli_run(const std::vector<std::string>& args);

}  // namespace slfact

#endif  // SLFACT_CLI_HPP
