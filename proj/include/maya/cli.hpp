/*
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#ifndef MAYA_CLI_HPP
#define MAYA_CLI_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace maya {

/// Entry point of the `maya` executable. Returns the process exit code:
/// 0 on success, 1 on I/O errors, 2 on validation or argument errors.
int run_cli(int argc, char** argv);

/// Parses a window list such as "3..10,20,T". "T" stands for `horizon`.
/// Duplicates are dropped (first occurrence kept) and reported through
/// `duplicates`. Throws InvalidArgument on malformed items.
std::vector<std::size_t> parse_tau_list(std::string_view text, std::size_t horizon,
                                        std::vector<std::size_t>* duplicates = nullptr);

}  // namespace maya

#endif  // MAYA_CLI_HPP
